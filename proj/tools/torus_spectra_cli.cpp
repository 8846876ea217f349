#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "torus_spectra/moment.hpp"
#include "torus_spectra/serialize.hpp"

namespace {

using torus::json;

constexpr int kExitOk = 0;
constexpr int kExitVerificationFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNumeric = 3;

std::vector<double> parse_numbers(const std::string& text, std::size_t expected,
                                  const std::string& what) {
  std::vector<double> out;
  std::stringstream in(text);
  std::string token;
  while (std::getline(in, token, ',')) {
    std::size_t used = 0;
    out.push_back(std::stod(token, &used));
    if (used != token.size()) throw torus::BadParameterError("malformed number in " + what);
  }
  if (out.size() != expected)
    throw torus::BadParameterError(what + " needs " + std::to_string(expected) + " comma-separated values");
  return out;
}

torus::TorusParams resolve_params(const std::string& torus_arg, const std::string& basis_arg) {
  if (!torus_arg.empty() && !basis_arg.empty())
    throw torus::BadParameterError("give either --torus or --basis, not both");
  if (!torus_arg.empty()) {
    const auto v = parse_numbers(torus_arg, 2, "--torus");
    return torus::TorusParams(v[0], v[1]);
  }
  if (!basis_arg.empty()) {
    const auto v = parse_numbers(basis_arg, 4, "--basis");
    torus::Mat2 B;
    B << v[0], v[1], v[2], v[3];
    return torus::reduce_basis(B).params;
  }
  throw torus::BadParameterError("one of --torus or --basis is required");
}

void write_output(const std::string& path, const std::string& payload) {
  if (path.empty()) {
    std::cout << payload;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw torus::Error("cannot open output file: " + path);
  out << payload;
}

struct CommonFlags {
  std::string torus_arg;
  std::string basis_arg;
  std::string kernel_spec = "gaussian:0.3";
  std::string out_path;
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  int max_depth = 30;
  std::uint64_t seed = 12345;

  torus::QuadratureConfig quadrature() const {
    torus::QuadratureConfig cfg;
    cfg.rel_tol = rel_tol;
    cfg.abs_tol = abs_tol;
    cfg.max_depth = max_depth;
    return cfg;
  }
};

void add_common(CLI::App* cmd, CommonFlags& flags, bool with_params = true) {
  if (with_params) {
    cmd->add_option("--torus", flags.torus_arg, "torus parameters a,b");
    cmd->add_option("--basis", flags.basis_arg, "lattice basis m11,m12,m21,m22 (reduced first)");
  }
  cmd->add_option("--kernel", flags.kernel_spec, "kernel spec (constant | gaussian:L | invpow:E:P | ball:R)");
  cmd->add_option("--rel-tol", flags.rel_tol, "quadrature relative tolerance")->check(CLI::PositiveNumber);
  cmd->add_option("--abs-tol", flags.abs_tol, "quadrature absolute tolerance")->check(CLI::PositiveNumber);
  cmd->add_option("--max-depth", flags.max_depth, "quadrature subdivision depth limit")->check(CLI::PositiveNumber);
  cmd->add_option("--seed", flags.seed, "random seed for randomized suites");
  cmd->add_option("--out", flags.out_path, "output path (stdout when omitted)");
}

int run_norms(const CommonFlags& flags) {
  const torus::TorusParams p = resolve_params(flags.torus_arg, flags.basis_arg);
  const torus::Kernel kernel = torus::parse_kernel_spec(flags.kernel_spec);
  const torus::QuadratureConfig cfg = flags.quadrature();
  const double norm = torus::operator_norm(p, kernel, cfg);
  const double hs = torus::hs_norm(p, kernel, cfg);
  json out{{"params", torus::to_json(p)},
           {"kernel", kernel.label},
           {"operator_norm", norm},
           {"hs_norm", hs},
           {"gamma0", norm}};
  write_output(flags.out_path, out.dump(2) + "\n");
  return kExitOk;
}

int run_sweep(const CommonFlags& flags, int na, int nb, double b_max) {
  const torus::Kernel kernel = torus::parse_kernel_spec(flags.kernel_spec);
  const torus::SweepResult sweep = torus::grid_sweep(kernel, flags.quadrature(), na, nb, b_max);
  std::string payload = torus::sweep_csv(sweep);
  const torus::SweepNode& best = sweep.nodes[sweep.argmax];
  char line[160];
  std::snprintf(line, sizeof(line), "argmax,%.17g,%.17g,%.17g\n", best.a, best.b, best.value);
  payload += line;
  write_output(flags.out_path, payload);
  return kExitOk;
}

int run_optimize(const CommonFlags& flags, double step) {
  const torus::TorusParams p = resolve_params(flags.torus_arg, flags.basis_arg);
  const torus::Kernel kernel = torus::parse_kernel_spec(flags.kernel_spec);
  const torus::PathResult path = torus::optimize_path(p, kernel, flags.quadrature(), step);
  write_output(flags.out_path, torus::to_json(path).dump(2) + "\n");
  return kExitOk;
}

int run_grad_check(const CommonFlags& flags, double h, double agree_tol) {
  const torus::TorusParams p = resolve_params(flags.torus_arg, flags.basis_arg);
  const torus::Kernel kernel = torus::parse_kernel_spec(flags.kernel_spec);
  const torus::GradReport rep = torus::grad_check(p, kernel, flags.quadrature(), h);
  write_output(flags.out_path, torus::to_json(rep).dump(2) + "\n");
  return rep.agreement < agree_tol ? kExitOk : kExitVerificationFailed;
}

int run_verify_claims(const CommonFlags& flags, int z_samples) {
  const torus::TorusParams p = resolve_params(flags.torus_arg, flags.basis_arg);
  const torus::ClaimReport rep = torus::claim_check(p, z_samples);
  write_output(flags.out_path, torus::to_json(rep).dump(2) + "\n");
  return rep.ok ? kExitOk : kExitVerificationFailed;
}

int run_moment_verify(const CommonFlags& flags, int trials) {
  torus::QuadratureConfig cfg = flags.quadrature();
  const auto profile = [](double t) { return std::exp(-t); };

  std::string payload;
  int passed = 0;
  for (int trial = 0; trial < trials; ++trial) {
    std::seed_seq seq{flags.seed, static_cast<std::uint64_t>(trial)};
    std::mt19937_64 rng(seq);

    const torus::ConvexPolygon hexagon = torus::random_convex_polygon(rng, 6);
    std::uniform_int_distribution<int> site_count(1, 12);
    const int n_sites = site_count(rng);
    const std::vector<torus::Vec2> sites = torus::random_sites_in_polygon(rng, hexagon, n_sites);

    const torus::MomentComparison theorem = torus::moment_theorem_check(hexagon, sites, profile, cfg);
    const torus::VertexCountResult vertices =
        torus::vertex_count_check(torus::clipped_voronoi(hexagon, sites));

    std::uniform_int_distribution<int> ngon(3, 12);
    const torus::ConvexPolygon poly = torus::random_convex_polygon(rng, ngon(rng));
    const torus::MomentComparison lemma = torus::moment_lemma_check(poly, profile, cfg);

    const torus::Disc disc{1.0};
    std::uniform_real_distribution<double> unit(0.05, 0.95), angle(0.0, 2.0 * M_PI);
    torus::RearrangementResult rearr;
    for (;;) {
      const double tha = angle(rng), thb = angle(rng);
      const torus::Vec2 a_pt(unit(rng) * std::cos(tha), unit(rng) * std::sin(tha));
      const torus::Vec2 b_pt(unit(rng) * std::cos(thb), unit(rng) * std::sin(thb));
      try {
        rearr = torus::segment_rearrangement_check(disc, a_pt, b_pt, profile, cfg);
        break;
      } catch (const torus::DegenerateRegionError&) {
        continue;  // pinched draw; resample
      }
    }

    const bool ok = theorem.ok && vertices.ok && lemma.ok && rearr.ok;
    passed += ok ? 1 : 0;
    json record{{"seed", flags.seed},
                {"trial", trial},
                {"inputs", json{{"hexagon_area", hexagon.area()},
                                {"n_sites", n_sites},
                                {"lemma_ngon", static_cast<int>(poly.size())}}},
                {"lhs", theorem.lhs},
                {"rhs", theorem.rhs},
                {"margin", theorem.margin},
                {"vertex_total", vertices.total},
                {"vertex_bound", vertices.bound},
                {"lemma_margin", lemma.margin},
                {"rearrangement_margin", rearr.region_moment - rearr.rearranged_moment},
                {"ok", ok}};
    payload += record.dump() + "\n";
  }
  char summary[64];
  std::snprintf(summary, sizeof(summary), "passed %d/%d\n", passed, trials);
  payload += summary;
  write_output(flags.out_path, payload);
  return passed == trials ? kExitOk : kExitVerificationFailed;
}

int run_voronoi_svg(const CommonFlags& flags) {
  const torus::TorusParams p = resolve_params(flags.torus_arg, flags.basis_arg);
  write_output(flags.out_path, torus::cell_svg(torus::build_cell(p)));
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral geometry of kernel operators on unit-volume flat tori"};
  app.require_subcommand(1);

  CommonFlags flags;
  int na = 51, nb = 51, z_samples = 2001, trials = 100;
  double b_max = 2.0, step = 1e-2, fd_h = 2e-3, agree_tol = 1e-5;

  CLI::App* norms = app.add_subcommand("norms", "operator and Hilbert-Schmidt norms");
  add_common(norms, flags);

  CLI::App* sweep = app.add_subcommand("sweep", "objective over a grid on the moduli space");
  add_common(sweep, flags);
  sweep->add_option("--na", na, "grid nodes along a")->check(CLI::Range(2, 100000));
  sweep->add_option("--nb", nb, "grid nodes along b")->check(CLI::Range(2, 100000));
  sweep->add_option("--bmax", b_max, "upper end of the b range");

  CLI::App* optimize = app.add_subcommand("optimize", "two-phase rearrangement path to the equilateral torus");
  add_common(optimize, flags);
  optimize->add_option("--step", step, "path step in each parameter")->check(CLI::PositiveNumber);

  CLI::App* grad = app.add_subcommand("grad-check", "closed-form gradient against finite differences");
  add_common(grad, flags);
  grad->add_option("--fd-step", fd_h, "finite-difference step")->check(CLI::PositiveNumber);
  grad->add_option("--agree-tol", agree_tol, "relative agreement threshold")->check(CLI::PositiveNumber);

  CLI::App* claims = app.add_subcommand("verify-claims", "argument-ordering claims behind dJ/da > 0");
  add_common(claims, flags);
  claims->add_option("--z-samples", z_samples, "z grid resolution")->check(CLI::Range(3, 100000000));

  CLI::App* moment = app.add_subcommand("moment-verify", "randomized moment theorem and lemma suites");
  add_common(moment, flags, false);
  moment->add_option("--trials", trials, "number of randomized trials")->check(CLI::PositiveNumber);

  CLI::App* svg = app.add_subcommand("voronoi-svg", "SVG of the cell with incircle and circumcircle");
  add_common(svg, flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (norms->parsed()) return run_norms(flags);
    if (sweep->parsed()) return run_sweep(flags, na, nb, b_max);
    if (optimize->parsed()) return run_optimize(flags, step);
    if (grad->parsed()) return run_grad_check(flags, fd_h, agree_tol);
    if (claims->parsed()) return run_verify_claims(flags, z_samples);
    if (moment->parsed()) return run_moment_verify(flags, trials);
    if (svg->parsed()) return run_voronoi_svg(flags);
  } catch (const torus::BadParameterError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const torus::DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const torus::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumeric;
  }
  return kExitUsage;
}
