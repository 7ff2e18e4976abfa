// Command-line front end: classification, Levinson winding checks, bound-state
// spectra, scattering matrices, and the Chern / degree-3 invariants, with JSON
// and CSV reports.

#include <atomic>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "ablev/chern.hpp"
#include "ablev/serialize.hpp"
#include "ablev/table_suite.hpp"
#include "ablev/weyl.hpp"
#include "ablev/winding.hpp"

using namespace ablev;
using nlohmann::json;

namespace {

// --------------------------------------------------------------------------
// Input mini-grammars.
// --------------------------------------------------------------------------

// Matrix: the named constants I, -I, 0, or 8 comma-separated reals
// (re,im pairs, row-major).
Matrix2c parse_matrix(const std::string& text) {
  if (text == "I") return Matrix2c::Identity();
  if (text == "-I") return -Matrix2c::Identity();
  if (text == "0") return Matrix2c::Zero();
  std::vector<double> vals;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    std::size_t used = 0;
    try {
      vals.push_back(std::stod(tok, &used));
    } catch (const std::exception&) {
      throw std::invalid_argument("bad matrix entry '" + tok + "'");
    }
    if (used != tok.size()) throw std::invalid_argument("bad matrix entry '" + tok + "'");
  }
  if (vals.size() != 8)
    throw std::invalid_argument("matrix needs I, -I, 0 or 8 comma-separated reals, got '" +
                                text + "'");
  Matrix2c m;
  for (int k = 0; k < 4; ++k) m(k / 2, k % 2) = Complex(vals[2 * k], vals[2 * k + 1]);
  return m;
}

// Unit-modulus complex: i, -i, 1, -1, or "re,im".
Complex parse_unit_complex(const std::string& text) {
  if (text == "i") return {0.0, 1.0};
  if (text == "-i") return {0.0, -1.0};
  if (text == "1") return {1.0, 0.0};
  if (text == "-1") return {-1.0, 0.0};
  const auto comma = text.find(',');
  if (comma == std::string::npos)
    throw std::invalid_argument("complex value needs i, -i, 1, -1 or re,im, got '" + text + "'");
  return {std::stod(text.substr(0, comma)), std::stod(text.substr(comma + 1))};
}

struct PairSpec {
  std::string c_text, d_text, u_text;
  double alpha = 0.0;

  AdmissiblePair pair() const {
    if (!u_text.empty()) {
      if (!c_text.empty() || !d_text.empty())
        throw std::invalid_argument("give either --U or --C/--D, not both");
      return from_unitary({parse_matrix(u_text)});
    }
    if (c_text.empty() || d_text.empty())
      throw std::invalid_argument("a boundary pair needs --C and --D (or --U)");
    const AdmissiblePair p{parse_matrix(c_text), parse_matrix(d_text)};
    const auto rep = is_admissible(p.C, p.D);
    if (!rep.admissible)
      throw std::invalid_argument("pair is not admissible (hermiticity residual " +
                                  std::to_string(rep.hermiticity_residual) + ", rank residual " +
                                  std::to_string(rep.rank_residual) + ")");
    return p;
  }
};

void add_pair_options(CLI::App* cmd, PairSpec& ps, bool need_alpha = true) {
  cmd->add_option("--C", ps.c_text, "matrix C (I, -I, 0, or 8 reals re,im row-major)");
  cmd->add_option("--D", ps.d_text, "matrix D (same grammar)");
  cmd->add_option("--U", ps.u_text, "unitary U labeling the extension (same grammar)");
  auto* a = cmd->add_option("--alpha", ps.alpha, "flux in (0,1)");
  if (need_alpha) a->required();
}

// --------------------------------------------------------------------------
// Output plumbing.
// --------------------------------------------------------------------------

std::string timestamp_utc() {
  const std::time_t now = std::time(nullptr);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  return buf;
}

json report_base(const std::string& command) {
  return json{{"schema", 1}, {"timestamp", timestamp_utc()}, {"command", command}};
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text << "\n";
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot open output file '" + path + "'");
  out << text << "\n";
}

void emit(const json& j, const std::string& path) { emit(j.dump(2), path); }

void write_edges_csv(const BoundaryLoop& loop, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot open '" + path + "'");
  out << "edge_id,parameter,g11_re,g11_im,g12_re,g12_im,g21_re,g21_im,g22_re,g22_im,det_phase\n";
  out.precision(17);
  for (const auto& e : loop.edges)
    for (std::size_t k = 0; k < e.params.size(); ++k) {
      out << e.edge_id << ',' << e.params[k];
      const Matrix2c& m = e.values[k];
      for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) out << ',' << m(r, c).real() << ',' << m(r, c).imag();
      out << ',' << std::arg(e.dets[k]) << '\n';
    }
}

int default_jobs() {
  if (const char* env = std::getenv("LEVINSON_AB_JOBS")) {
    const int j = std::atoi(env);
    if (j > 0) return j;
  }
  const unsigned hc = std::thread::hardware_concurrency();
  return hc > 0 ? int(hc) : 1;
}

// Static task pool: deterministic result order, collector on the main thread.
template <class Task, class Fn>
std::vector<json> run_pool(const std::vector<Task>& tasks, int jobs, Fn&& fn) {
  std::vector<json> results(tasks.size());
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (;;) {
      const std::size_t k = next.fetch_add(1);
      if (k >= tasks.size()) return;
      results[k] = fn(tasks[k]);
    }
  };
  std::vector<std::thread> threads;
  const int n = std::max(1, std::min<int>(jobs, int(tasks.size())));
  threads.reserve(n);
  for (int t = 0; t < n; ++t) threads.emplace_back(worker);
  for (auto& t : threads) t.join();
  return results;
}

// --------------------------------------------------------------------------
// Subcommands.
// --------------------------------------------------------------------------

int cmd_classify(const PairSpec& ps, const std::string& output) {
  const Classification c = classify(ps.pair(), Flux(ps.alpha));
  json j = report_base("classify");
  j.merge_patch(to_json(c));
  emit(j, output);
  return 0;
}

int cmd_levinson_single(const PairSpec& ps, const std::string& emit_edges,
                        const std::string& output) {
  BoundaryLoop loop;
  const LevinsonReport rep = total_winding(ps.pair(), Flux(ps.alpha), &loop);
  const bool ok = levinson_check(ps.pair(), Flux(ps.alpha)).first;
  json j = report_base("levinson");
  j["pass"] = ok;
  j.merge_patch(to_json(rep));
  if (!emit_edges.empty()) {
    write_edges_csv(loop, emit_edges);
    j["edges_csv"] = emit_edges;
  }
  emit(j, output);
  return ok ? 0 : 2;
}

int cmd_levinson_table_suite(const std::string& output) {
  const auto& rows = table_fixtures();
  json results = json::array();
  int passed = 0;
  for (const auto& row : rows) {
    const auto [ok, rep] = levinson_check(row.pair, Flux(row.alpha));
    const bool label_ok = !rep.degenerate && rep.case_label.label == row.label;
    const bool all_ok = ok && label_ok;
    passed += all_ok;
    std::cout << (all_ok ? "PASS " : "FAIL ") << row.label << "  phi=(" << rep.phi1 << ", "
              << rep.phi2 << ", " << rep.phi3 << ")  wind=" << rep.wind
              << "  bound=" << rep.bound_count << "\n";
    json r = to_json(rep);
    r["row"] = row.label;
    r["pass"] = all_ok;
    results.push_back(std::move(r));
  }
  std::cout << passed << "/" << rows.size() << " table rows pass\n";
  if (!output.empty()) {
    json j = report_base("levinson --table-suite");
    j["rows"] = std::move(results);
    j["passed"] = passed;
    j["total"] = rows.size();
    emit(j, output);
  }
  return passed == int(rows.size()) ? 0 : 2;
}

int cmd_levinson_random(int count, std::uint64_t seed, const std::vector<double>& alphas,
                        int jobs, const std::string& output) {
  struct Task {
    std::uint64_t seed;
    double alpha;
  };
  std::vector<Task> tasks;
  for (int k = 0; k < count; ++k)
    for (double a : alphas) tasks.push_back({seed + std::uint64_t(k), a});

  const auto results = run_pool(tasks, jobs, [](const Task& t) -> json {
    const auto [ok, rep] = levinson_check(random_pair(t.seed), Flux(t.alpha));
    return json{{"seed", t.seed},
                {"alpha", t.alpha},
                {"pass", ok},
                {"wind", rep.wind},
                {"bound_count", rep.bound_count},
                {"integer_residual", rep.integer_residual},
                {"case", rep.degenerate ? "degenerate" : rep.case_label.label}};
  });

  int passed = 0;
  for (const auto& r : results) passed += r.at("pass").get<bool>();
  std::cout << passed << "/" << results.size() << " random checks pass\n";
  if (!output.empty()) {
    json j = report_base("levinson --random");
    j["checks"] = results;
    j["passed"] = passed;
    j["total"] = results.size();
    emit(j, output);
  }
  return passed == int(results.size()) ? 0 : 2;
}

int cmd_spectrum(const PairSpec& ps, const std::string& output) {
  const auto pts = bound_states(ps.pair(), Flux(ps.alpha));
  json j = report_base("spectrum");
  j["bound_states"] = json::array();
  for (const auto& p : pts) j["bound_states"].push_back(to_json(p));
  j["count"] = negative_count_cdstar(ps.pair());
  emit(j, output);
  return 0;
}

struct KappaGrid {
  double lo = 0.0, hi = 0.0;
  int n = 0;
};

KappaGrid parse_kappa_grid(const std::string& text) {
  KappaGrid g;
  std::stringstream ss(text);
  std::string a, b, c;
  if (!std::getline(ss, a, ':') || !std::getline(ss, b, ':') || !std::getline(ss, c))
    throw std::invalid_argument("--kappa-grid needs lo:hi:n");
  g.lo = std::stod(a);
  g.hi = std::stod(b);
  g.n = std::stoi(c);
  if (!(g.lo > 0.0) || !(g.hi > g.lo) || g.n < 2)
    throw std::invalid_argument("--kappa-grid needs 0 < lo < hi and n >= 2");
  return g;
}

int cmd_smatrix(const PairSpec& ps, double kappa, const std::string& grid_text,
                const std::string& format, const std::string& output) {
  const AdmissiblePair pair = ps.pair();
  const Flux alpha(ps.alpha);
  if (grid_text.empty()) {
    const Matrix2c s = s_matrix(pair, alpha, kappa);
    json j = report_base("smatrix");
    j["kappa"] = kappa;
    j["S"] = to_json(s);
    j["unitarity_residual"] = unitarity_residual(s);
    j["det_phase"] = std::arg(s.determinant());
    emit(j, output);
    return 0;
  }
  const KappaGrid g = parse_kappa_grid(grid_text);
  const double llo = std::log(g.lo), lhi = std::log(g.hi);
  if (format == "csv") {
    std::ostringstream out;
    out.precision(17);
    out << "kappa,s11_re,s11_im,s12_re,s12_im,s21_re,s21_im,s22_re,s22_im,det_phase\n";
    for (int k = 0; k < g.n; ++k) {
      const double kap = std::exp(llo + (lhi - llo) * k / double(g.n - 1));
      const Matrix2c s = s_matrix(pair, alpha, kap);
      out << kap;
      for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) out << ',' << s(r, c).real() << ',' << s(r, c).imag();
      out << ',' << std::arg(s.determinant()) << '\n';
    }
    emit(out.str(), output);
    return 0;
  }
  json j = report_base("smatrix");
  j["samples"] = json::array();
  for (int k = 0; k < g.n; ++k) {
    const double kap = std::exp(llo + (lhi - llo) * k / double(g.n - 1));
    const Matrix2c s = s_matrix(pair, alpha, kap);
    j["samples"].push_back({{"kappa", kap}, {"S", to_json(s)}});
  }
  emit(j, output);
  return 0;
}

struct ManifoldArgs {
  std::string l1_text = "-i", l2_text = "i";
  double alpha = 0.5;
  ManifoldSpec spec() const {
    return {parse_unit_complex(l1_text), parse_unit_complex(l2_text), Flux(alpha)};
  }
};

int cmd_chern(const ManifoldArgs& ma, const std::string& method, const std::string& grid_text,
              const std::string& emit_curvature, const std::string& output) {
  const ManifoldSpec spec = ma.spec();
  int n_rho = 64, n_phi = 64;
  if (!grid_text.empty()) {
    if (std::sscanf(grid_text.c_str(), "%dx%d", &n_rho, &n_phi) != 2)
      throw std::invalid_argument("--grid needs NxM");
  }
  json j = report_base("chern");
  j["l1"] = {spec.l1.real(), spec.l1.imag()};
  j["l2"] = {spec.l2.real(), spec.l2.imag()};
  j["alpha"] = spec.alpha;
  if (method == "boundary" || method == "both") j["boundary"] = to_json(chern_boundary(spec));
  if (method == "lattice" || method == "both")
    j["lattice"] = to_json(chern_lattice(spec, n_rho, n_phi));
  if (!emit_curvature.empty()) {
    std::ofstream out(emit_curvature);
    if (!out) throw std::invalid_argument("cannot open '" + emit_curvature + "'");
    out << "rho,phi,flux\n";
    out.precision(17);
    for (const auto& p : curvature_grid(spec, n_rho, n_phi))
      out << p.rho << ',' << p.phi << ',' << p.flux << '\n';
    j["curvature_csv"] = emit_curvature;
  }
  emit(j, output);
  return 0;
}

int cmd_trace3(const ManifoldArgs& ma, const std::string& grid_text, bool reverse,
               const std::string& output) {
  int n_rho = 48, n_phi = 48, edges = 4, n_t = 96;
  if (!grid_text.empty()) {
    if (std::sscanf(grid_text.c_str(), "%dx%dx%dx%d", &n_rho, &n_phi, &edges, &n_t) != 4 ||
        edges != 4)
      throw std::invalid_argument("--grid needs Nrho x Nphi x 4 x Nt (e.g. 48x48x4x96)");
  }
  const Trace3Result r = trace3_degree(ma.spec(), n_rho, n_phi, n_t, reverse);
  json j = report_base("trace3");
  j["l1"] = {ma.spec().l1.real(), ma.spec().l1.imag()};
  j["l2"] = {ma.spec().l2.real(), ma.spec().l2.imag()};
  j["alpha"] = ma.alpha;
  j.merge_patch(to_json(r));
  emit(j, output);
  return 0;
}

void print_emit_formats() {
  std::cout <<
      R"(CSV formats emitted by the tool:

levinson --emit-edges FILE
  edge_id    1..4 (threshold, scattering, high-energy, identity edge)
  parameter  x on edges 1 and 3, kappa on edges 2 and 4 (inf at open ends)
  g11_re ... g22_im   the four matrix entries, row-major, re/im interleaved
  det_phase  principal argument of det at the sample

smatrix --kappa-grid lo:hi:n --format csv
  kappa, s11_re, s11_im, s12_re, s12_im, s21_re, s21_im, s22_re, s22_im, det_phase
  (kappa log-spaced from lo to hi)

chern --emit-curvature FILE
  rho, phi   lower-left corner of the plaquette
  flux       Berry flux through the plaquette, in (-pi, pi]
)";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Scattering and spectral data for the two-parameter point-flux boundary family:\n"
      "case classification, Levinson winding checks, bound states, S-matrices, and the\n"
      "Chern / degree-3 invariants of the bound-state bundle."};
  app.require_subcommand(1);
  app.fallthrough();

  std::string output;
  app.add_option("--output", output, "write the report to this file instead of stdout")
      ->capture_default_str();

  // classify
  auto* classify_cmd = app.add_subcommand("classify", "case label and predicted edge phases");
  PairSpec classify_ps;
  add_pair_options(classify_cmd, classify_ps);

  // levinson
  auto* lev_cmd = app.add_subcommand("levinson", "winding number vs bound-state count");
  PairSpec lev_ps;
  add_pair_options(lev_cmd, lev_ps, false);
  bool table_suite = false;
  int random_count = 0, jobs = default_jobs();
  std::uint64_t seed = 1;
  std::vector<double> alphas{0.1, 0.25, 0.5, 0.75, 0.9};
  std::string emit_edges;
  lev_cmd->add_flag("--table-suite", table_suite, "run every constructed table row");
  lev_cmd->add_option("--random", random_count, "run N seeded random pairs");
  lev_cmd->add_option("--seed", seed, "base seed for --random")->capture_default_str();
  lev_cmd->add_option("--alpha-list", alphas, "flux values for --random")->delimiter(',');
  lev_cmd->add_option("--jobs", jobs, "worker threads (default: LEVINSON_AB_JOBS or cores)");
  lev_cmd->add_option("--emit-edges", emit_edges, "dump the sampled edges as CSV");

  // spectrum
  auto* spec_cmd = app.add_subcommand("spectrum", "negative eigenvalues of the extension");
  PairSpec spec_ps;
  add_pair_options(spec_cmd, spec_ps);

  // smatrix
  auto* sm_cmd = app.add_subcommand("smatrix", "scattering matrix at momentum kappa");
  PairSpec sm_ps;
  add_pair_options(sm_cmd, sm_ps);
  double kappa = 1.0;
  std::string kappa_grid, format = "json";
  sm_cmd->add_option("--kappa", kappa, "momentum (0 and inf give the limit values)")
      ->capture_default_str();
  sm_cmd->add_option("--kappa-grid", kappa_grid, "log-spaced dump, lo:hi:n");
  sm_cmd->add_option("--format", format, "json or csv (csv only with --kappa-grid)")
      ->check(CLI::IsMember({"json", "csv"}));

  // chern
  auto* chern_cmd = app.add_subcommand("chern", "bound-state bundle Chern number");
  ManifoldArgs chern_ma;
  std::string chern_method = "both", chern_grid, emit_curvature;
  chern_cmd->add_option("--l1", chern_ma.l1_text, "first eigenvalue (Im < 0)")
      ->capture_default_str();
  chern_cmd->add_option("--l2", chern_ma.l2_text, "second eigenvalue (Im > 0)")
      ->capture_default_str();
  chern_cmd->add_option("--alpha", chern_ma.alpha, "flux in (0,1)")->required();
  chern_cmd->add_option("--method", chern_method, "boundary, lattice or both")
      ->check(CLI::IsMember({"boundary", "lattice", "both"}))
      ->capture_default_str();
  chern_cmd->add_option("--grid", chern_grid, "lattice grid NxM (default 64x64)");
  chern_cmd->add_option("--emit-curvature", emit_curvature, "per-plaquette flux CSV");

  // trace3
  auto* t3_cmd = app.add_subcommand("trace3", "degree-3 trace pairing over X x square");
  ManifoldArgs t3_ma;
  std::string t3_grid;
  bool reverse_loop = false;
  t3_cmd->add_option("--l1", t3_ma.l1_text, "first eigenvalue (Im < 0)")->capture_default_str();
  t3_cmd->add_option("--l2", t3_ma.l2_text, "second eigenvalue (Im > 0)")->capture_default_str();
  t3_cmd->add_option("--alpha", t3_ma.alpha, "flux in (0,1)")->required();
  t3_cmd->add_option("--grid", t3_grid, "Nrho x Nphi x 4 x Nt (default 48x48x4x96)");
  t3_cmd->add_flag("--reverse-loop", reverse_loop, "traverse the square backwards");

  // emit-formats
  auto* fmt_cmd = app.add_subcommand("emit-formats", "document the CSV columns");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*classify_cmd) return cmd_classify(classify_ps, output);
    if (*lev_cmd) {
      if (table_suite) return cmd_levinson_table_suite(output);
      if (random_count > 0)
        return cmd_levinson_random(random_count, seed, alphas, jobs, output);
      return cmd_levinson_single(lev_ps, emit_edges, output);
    }
    if (*spec_cmd) return cmd_spectrum(spec_ps, output);
    if (*sm_cmd) return cmd_smatrix(sm_ps, kappa, kappa_grid, format, output);
    if (*chern_cmd) return cmd_chern(chern_ma, chern_method, chern_grid, emit_curvature, output);
    if (*t3_cmd) return cmd_trace3(t3_ma, t3_grid, reverse_loop, output);
    if (*fmt_cmd) {
      print_emit_formats();
      return 0;
    }
  } catch (const DegenerateCase& e) {
    std::cerr << "degenerate case: " << e.what() << "\n";
    return 2;
  } catch (const NumericsError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
