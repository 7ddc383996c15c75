// ratconc: command-line front end.
//
//   ratconc info FILE
//   ratconc obstruct FILE [--cmax N] [--mode symbolic|numeric] [--output text|structured]
//   ratconc signature FILE [--emit jumps|table]
//
// obstruct exits 0 when obstructed, 2 when inconclusive; any error exits 1.

#include "ratconc/io.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace ratconc;

namespace {

constexpr int kObstructed = 0;
constexpr int kError = 1;
constexpr int kInconclusive = 2;

KnotDocument load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_document(ss.str());
}

std::string matrix_text(const SeifertMatrix& v) {
  std::string out = "[";
  for (std::size_t i = 0; i < v.dim(); ++i) {
    out += i ? ", [" : "[";
    for (std::size_t j = 0; j < v.dim(); ++j) out += (j ? ", " : "") + std::to_string(v(i, j));
    out += "]";
  }
  return out + "]";
}

int cmd_info(const std::string& file) {
  KnotDocument d = load(file);
  const SeifertMatrix& v = d.seifert_matrix();
  std::ostringstream os;
  os << "knot: " << d.name << "\n";
  os << "seifert matrix: " << matrix_text(v) << "\n";
  os << "alexander polynomial: " << alexander_polynomial(v).to_string() << "\n";
  PresentedModule pm = d.knot ? present_module(d.knot->pattern) : present_module(v);
  os << "module: " << (pm.module.is_trivial() ? "0 (trivial)" : pm.module.describe()) << "\n";
  if (!pm.module.is_trivial()) {
    os << "blanchfield form:\n";
    std::istringstream lines(blanchfield_form(pm).describe());
    for (std::string line; std::getline(lines, line);)
      if (!line.empty()) os << "  " << line << "\n";
  }
  if (v.dim() == 2) {
    auto m = metabolizer_search(v);
    os << "metabolizer: " << (m ? "(" + std::to_string((*m)[0]) + "," + std::to_string((*m)[1]) + ")" : "none") << "\n";
  } else {
    os << "metabolizer: not searched (genus " << v.genus() << ")\n";
  }
  std::cout << os.str();
  return 0;
}

int cmd_obstruct(const std::string& file, int cmax, const std::string& mode, const std::string& output) {
  KnotDocument d = load(file);
  FamilySpec spec = d.family_spec();
  ObstructionReport r = verify_obstructed(spec, cmax, mode == "numeric" ? Mode::numeric : Mode::symbolic);
  if (output == "structured") {
    std::cout << render_report(r, d.name).dump(2) << "\n";
  } else {
    std::ostringstream os;
    os << "knot: " << d.name << "\n";
    os << "complexities: 1.." << r.c_max << " (" << to_string(r.mode) << ")\n";
    for (const auto& row : r.rows)
      os << "  c=" << row.complexity << "  " << row.pattern.prime.to_string() << "  " << row.pattern.describe()
         << "  ->  " << row.value.to_string() << (row.value.nonvanishing() ? "" : "  (vanishes)") << "\n";
    if (r.certificate.uniform)
      os << "uniform in c: every pattern has the same value for c = " << r.certificate.c_first << ".." << r.certificate.c_last << "\n";
    os << "audit:\n";
    for (const auto& a : r.audit) os << "  " << a << "\n";
    os << "verdict: " << to_string(r.verdict) << " (" << r.reason << ")\n";
    std::cout << os.str();
  }
  return r.verdict == Verdict::obstructed ? kObstructed : kInconclusive;
}

int cmd_signature(const std::string& file, const std::string& emit) {
  KnotDocument d = load(file);
  SignatureAnalysis sa(d.seifert_matrix());
  const Rational width = interval_width_bound();
  Rho0Value rho = sa.rho0(width);  // throws before anything is printed
  SignatureFunction f = sa.function();
  std::ostringstream os;
  os << "knot: " << d.name << "\n";
  if (emit == "jumps") {
    os << "theta\tjump\n";
    for (const auto& j : f.jumps) os << j.theta.to_string() << "\t" << (j.jump > 0 ? "+" : "") << j.jump << "\n";
  } else {
    os << "from\tto\tsigma\n";
    std::string from = "0";
    for (std::size_t i = 0; i <= f.jumps.size(); ++i) {
      std::string to = i < f.jumps.size() ? f.jumps[i].theta.to_string() : "1";
      os << from << "\t" << to << "\t" << f.values[i] << "\n";
      from = to;
    }
  }
  os << "rho0: " << rho.to_string() << "\n";
  std::cout << os.str();
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rational concordance obstructions from Seifert matrices"};
  app.require_subcommand(1);

  std::string file;
  int cmax = 5;
  std::string mode = "symbolic", output = "text", emit = "jumps";

  auto* info = app.add_subcommand("info", "Alexander polynomial, module, Blanchfield form, metabolizer");
  info->add_option("file", file, "knot document")->required();

  auto* obstruct = app.add_subcommand("obstruct", "metabelian rho obstruction for the document's family");
  obstruct->add_option("file", file, "knot document")->required();
  obstruct->add_option("--cmax", cmax, "largest complexity checked")->check(CLI::PositiveNumber);
  obstruct->add_option("--mode", mode, "companion values")->check(CLI::IsMember({"symbolic", "numeric"}));
  obstruct->add_option("--output", output, "report format")->check(CLI::IsMember({"text", "structured"}));

  auto* signature = app.add_subcommand("signature", "Levine-Tristram signature jumps and rho_0");
  signature->add_option("file", file, "knot document")->required();
  signature->add_option("--emit", emit, "jump list or arc table")->check(CLI::IsMember({"jumps", "table"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kError;
  }

  try {
    if (*info) return cmd_info(file);
    if (*obstruct) return cmd_obstruct(file, cmax, mode, output);
    if (*signature) return cmd_signature(file, emit);
  } catch (const HypothesisError& e) {
    std::cerr << "hypothesis check failed: " << e.what() << "\n";
  } catch (const DocumentError& e) {
    std::cerr << "invalid document: " << e.what() << "\n";
  } catch (const PrecisionBudgetExceeded& e) {
    std::cerr << "precision budget exceeded: " << e.what() << "\n";
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
  }
  return kError;
}
