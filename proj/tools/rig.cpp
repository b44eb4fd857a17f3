#include <CLI11.hpp>

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>
#include <vector>

#include "rig/adjoint.hpp"
#include "rig/config.hpp"
#include "rig/errors.hpp"
#include "rig/mbasis.hpp"
#include "rig/report.hpp"
#include "rig/rigging.hpp"
#include "rig/rng.hpp"
#include "rig/space.hpp"
#include "rig/suite.hpp"

namespace {

using namespace rig;

struct CommonOpts {
  std::string config_path;
  std::string out;
  std::string format = "json";
  std::uint64_t seed = 0;
  bool verbose = false;
  CLI::Option* seed_opt = nullptr;
};

void add_common(CLI::App* sub, CommonOpts& c) {
  sub->add_option("config", c.config_path, "JSON config file");
  c.seed_opt = sub->add_option("--seed", c.seed, "override the rng seed");
  sub->add_option("--out", c.out, "write the report to this path");
  sub->add_option("--format", c.format, "report format")
      ->check(CLI::IsMember({"json", "csv"}));
  sub->add_flag("-v,--verbose", c.verbose, "print informational values too");
}

RunConfig make_cfg(const CommonOpts& c) {
  RunConfig cfg =
      c.config_path.empty() ? default_verify_config() : load_config(c.config_path);
  if (c.seed_opt != nullptr && c.seed_opt->count() > 0) {
    cfg.rng_seed = c.seed;
    cfg.has_seed = true;
  }
  return cfg;
}

// Swaps the suite for the subcommand's fixed check list, keeping any per-check
// parameters the config file supplied for those names.
void replace_suite(RunConfig& cfg, std::initializer_list<const char*> names) {
  std::vector<CheckConfig> picked;
  for (const char* name : names) {
    CheckConfig cc;
    cc.check = name;
    for (const CheckConfig& old : cfg.suite)
      if (old.check == name) {
        cc = old;
        break;
      }
    picked.push_back(std::move(cc));
  }
  cfg.suite = std::move(picked);
  for (const CheckConfig& cc : cfg.suite)
    if (check_is_randomized(cc.check) && !cfg.has_seed)
      throw ConfigError("rng_seed: required because check " + cc.check +
                        " is randomized");
}

void print_suite(const SuiteResult& suite, bool verbose) {
  for (const auto& r : suite.reports) {
    std::printf("[%s] %-22s %9.2f ms  seed=%llu\n", r.pass ? "PASS" : "FAIL",
                r.check.c_str(), r.wall_ms,
                static_cast<unsigned long long>(r.rng_seed));
    for (const auto& m : r.measured) {
      if (m.kind == MeasuredValue::kInfo) {
        if (verbose)
          std::printf("    %-36s %s\n", m.name.c_str(),
                      format_double(m.value).c_str());
        continue;
      }
      if (!verbose && r.pass) continue;
      if (m.kind == MeasuredValue::kLe)
        std::printf("    %-36s %s <= %s%s\n", m.name.c_str(),
                    format_double(m.value).c_str(),
                    format_double(m.tolerance).c_str(),
                    m.passes() ? "" : "  VIOLATED");
      else
        std::printf("    %-36s %s ~ %s +- %s%s\n", m.name.c_str(),
                    format_double(m.value).c_str(),
                    format_double(m.target).c_str(),
                    format_double(m.tolerance).c_str(),
                    m.passes() ? "" : "  VIOLATED");
    }
    if (!r.pass && !r.detail.empty()) std::printf("    detail: %s\n", r.detail.c_str());
  }
  std::printf("%zu checks, %s\n", suite.reports.size(),
              suite.all_pass() ? "all passed" : "FAILURES PRESENT");
}

int finish(const SuiteResult& suite, const CommonOpts& c) {
  print_suite(suite, c.verbose);
  if (!c.out.empty()) emit(suite, c.format, c.out);
  return suite.all_pass() ? 0 : 1;
}

// First line the dimension, then n^2 entries row-major; commas or whitespace.
Matrix read_matrix_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open matrix file: " + path);
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  for (char& ch : text)
    if (ch == ',') ch = ' ';
  std::istringstream ss(text);
  long long n = 0;
  if (!(ss >> n) || n < 1 || n > 4096)
    throw ConfigError("matrix file " + path + ": first entry must be the dimension");
  Matrix a(n, n);
  for (long long r = 0; r < n; ++r)
    for (long long c = 0; c < n; ++c)
      if (!(ss >> a(r, c)))
        throw ConfigError("matrix file " + path + ": expected " +
                          std::to_string(n * n) + " entries");
  double trailing = 0.0;
  if (ss >> trailing)
    throw ConfigError("matrix file " + path + ": trailing entries");
  return a;
}

int cmd_build(const CommonOpts& c) {
  const RunConfig cfg = make_cfg(c);
  SpaceSpec s;
  if (cfg.space.weights.empty()) {
    s = SpaceSpec::lp(cfg.space.dim, cfg.space.p);
  } else {
    Vector w(cfg.space.dim);
    for (int i = 0; i < cfg.space.dim; ++i) w[i] = cfg.space.weights[i];
    s = SpaceSpec::lp(cfg.space.dim, cfg.space.p, w);
  }
  const RiggingSeed rs =
      make_seed(s, cfg.seed_kind, derive_seed(cfg.rng_seed, "build", 0));
  rs.validate();
  const RiggingTriple tr = build_rigging(rs);
  const EmbeddingConstants ec = embedding_constants(rs, tr.g2, tr.g1);

  std::printf("space: dim=%d p=%s weights=%s\n", s.dim,
              format_double(s.p).c_str(),
              cfg.space.weights.empty() ? "unit" : "custom");
  std::printf("transfer weights:");
  for (int i = 0; i < rs.ts.size(); ++i)
    std::printf(" %s", format_double(rs.ts[i]).c_str());
  std::printf("\n");
  std::printf("G2 condition: %s\n", format_double(tr.g2.cond()).c_str());
  std::printf("G1 condition: %s\n", format_double(tr.g1.cond()).c_str());
  std::printf("transfer spectrum min: %s  trace: %s\n",
              format_double(tr.eigs.minCoeff()).c_str(),
              format_double(tr.eigs.sum()).c_str());
  std::printf("c(B -> H2)  in [%s, %s]\n", format_double(ec.b_to_h2.lower).c_str(),
              format_double(ec.b_to_h2.upper).c_str());
  std::printf("c(H1 -> B)  in [%s, %s]\n", format_double(ec.h1_to_b.lower).c_str(),
              format_double(ec.h1_to_b.upper).c_str());
  if (c.verbose) {
    for (std::size_t i = 0; i < rs.xs.size(); ++i) {
      std::printf("x%zu:", i + 1);
      for (int k = 0; k < rs.xs[i].size(); ++k)
        std::printf(" %s", format_double(rs.xs[i][k]).c_str());
      std::printf("\n");
    }
  }
  return 0;
}

int cmd_auerbach(const CommonOpts& c) {
  RunConfig cfg = make_cfg(c);
  replace_suite(cfg, {"auerbach"});
  const SuiteResult suite = run_suite(cfg);
  if (c.verbose) {
    // reproduce the check's draw to show the basis itself
    SpaceSpec s;
    if (cfg.space.weights.empty()) {
      s = SpaceSpec::lp(cfg.space.dim, cfg.space.p);
    } else {
      Vector w(cfg.space.dim);
      for (int i = 0; i < cfg.space.dim; ++i) w[i] = cfg.space.weights[i];
      s = SpaceSpec::lp(cfg.space.dim, cfg.space.p, w);
    }
    const std::uint64_t seed = derive_seed(cfg.rng_seed, "auerbach", 0);
    const AuerbachResult ar = auerbach_basis(s, derive_seed(seed, "starts", 0));
    for (std::size_t i = 0; i < ar.system.xs.size(); ++i) {
      std::printf("x%zu:", i + 1);
      for (int k = 0; k < ar.system.xs[i].size(); ++k)
        std::printf(" %s", format_double(ar.system.xs[i][k]).c_str());
      std::printf("   product %s\n", format_double(ar.products[i]).c_str());
    }
  }
  return finish(suite, c);
}

int cmd_adjoint(const CommonOpts& c, const std::string& matrix_path,
                CLI::Option* matrix_opt) {
  RunConfig cfg = make_cfg(c);
  if (matrix_opt != nullptr && matrix_opt->count() > 0) {
    const Matrix a = read_matrix_csv(matrix_path);
    const GridModel g = build_grid(static_cast<int>(a.rows()));
    double p = cfg.space.p;
    if (is_inf_exponent(p)) p = 2.0;
    SuiteResult suite;
    suite.version = "1.0.0";
    suite.master_seed = cfg.rng_seed;
    suite.config_digest = digest_hex(config_digest(cfg));
    suite.reports.push_back(check_remark21(
        g, p, a, 20, derive_seed(cfg.rng_seed, "adjoint_remark21", 0)));
    return finish(suite, c);
  }
  replace_suite(cfg, {"adjoint_spectrum", "adjoint_double", "adjoint_remark21",
                      "embedding_chain"});
  return finish(run_suite(cfg), c);
}

std::vector<int> parse_int_list(const std::string& text, const char* what) {
  std::vector<int> out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(text.substr(pos), &used);
    } catch (const std::exception&) {
      throw ConfigError(std::string(what) + ": expected a comma-separated integer list");
    }
    pos += used;
    if (pos < text.size() && text[pos] == ',') ++pos;
    else if (pos < text.size())
      throw ConfigError(std::string(what) + ": expected a comma-separated integer list");
    out.push_back(v);
  }
  return out;
}

int cmd_sweep(const CommonOpts& c, std::vector<int> dims, std::vector<int> grids) {
  const RunConfig cfg = make_cfg(c);
  std::string csv;
  if (!grids.empty()) {
    double p = cfg.space.p;
    if (is_inf_exponent(p) || p < 2.0) p = 2.0;
    std::printf("%6s %14s %14s %14s %14s\n", "n", "c(H01->Lp)", "c(Lp->Lq)",
                "c(Lq->H-1)", "c(H01->H-1)");
    csv = "n,c_h01_to_lp,c_lp_to_lq,c_lq_to_hneg1,c_h01_to_hneg1\n";
    for (int n : grids) {
      const VerificationReport rep = embedding_chain_report(build_grid(n), p);
      double v[4] = {0, 0, 0, 0};
      for (const auto& m : rep.measured) {
        if (m.name == "c_h01_to_lp") v[0] = m.value;
        if (m.name == "c_lp_to_lq") v[1] = m.value;
        if (m.name == "c_lq_to_hneg1") v[2] = m.value;
        if (m.name == "c_h01_to_hneg1") v[3] = m.value;
      }
      std::printf("%6d %14.8f %14.8f %14.8f %14.8f\n", n, v[0], v[1], v[2], v[3]);
      csv += std::to_string(n);
      for (double x : v) csv += "," + format_double(x);
      csv += "\n";
    }
  } else {
    if (dims.empty()) dims = {2, 3, 4, 5, 6, 8, 10};
    std::printf("%6s %14s %14s %14s %14s %14s\n", "N", "cap", "cB->H2 lo",
                "cB->H2 hi", "cH1->B lo", "cH1->B hi");
    csv = "N,cap,c_b_to_h2_lower,c_b_to_h2_upper,c_h1_to_b_lower,c_h1_to_b_upper\n";
    for (int n : dims) {
      const SpaceSpec s = SpaceSpec::lp(n, cfg.space.p);
      const RiggingSeed rs = make_seed(
          s, cfg.seed_kind, derive_seed(cfg.rng_seed, "sweep", static_cast<std::uint64_t>(n)));
      const GramForm g2 = build_h2(rs);
      const GramForm g1 = build_h1(rs, g2);
      const EmbeddingConstants ec = embedding_constants(rs, g2, g1);
      double cap2 = 0.0;
      for (int i = 0; i < rs.ts.size(); ++i) {
        const double dn = dual_norm(s, rs.fs[static_cast<std::size_t>(i)]);
        cap2 += rs.ts[i] * dn * dn;
      }
      const double cap = std::sqrt(cap2);
      std::printf("%6d %14.10f %14.10f %14.10f %14.10f %14.10f\n", n, cap,
                  ec.b_to_h2.lower, ec.b_to_h2.upper, ec.h1_to_b.lower,
                  ec.h1_to_b.upper);
      csv += std::to_string(n) + "," + format_double(cap) + "," +
             format_double(ec.b_to_h2.lower) + "," + format_double(ec.b_to_h2.upper) +
             "," + format_double(ec.h1_to_b.lower) + "," +
             format_double(ec.h1_to_b.upper) + "\n";
    }
  }
  if (!c.out.empty()) {
    std::ofstream out(c.out, std::ios::binary);
    if (!out) throw IoError("cannot write " + c.out);
    out << csv;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rigged-space verification laboratory"};
  app.require_subcommand(1);

  CommonOpts build_o, verify_o, ex31_o, mbasis_o, auerbach_o, adjoint_o, sweep_o;
  std::string matrix_path;
  std::string sweep_dims, sweep_grids;

  CLI::App* sub_build = app.add_subcommand("build", "construct a rigging and print its summary");
  add_common(sub_build, build_o);
  CLI::App* sub_verify = app.add_subcommand("verify", "run the configured suite (default: all checks)");
  add_common(sub_verify, verify_o);
  CLI::App* sub_ex31 = app.add_subcommand("example31", "run the worked two-vector example");
  add_common(sub_ex31, ex31_o);
  CLI::App* sub_mbasis = app.add_subcommand("mbasis", "biorthogonal-system checks on the configured space");
  add_common(sub_mbasis, mbasis_o);
  CLI::App* sub_auerbach = app.add_subcommand("auerbach", "determinant-ascent unit basis");
  add_common(sub_auerbach, auerbach_o);
  CLI::App* sub_adjoint = app.add_subcommand("adjoint", "grid adjoint checks");
  add_common(sub_adjoint, adjoint_o);
  CLI::Option* matrix_opt =
      sub_adjoint->add_option("--matrix", matrix_path,
                              "operator matrix (CSV: first line n, then n^2 row-major entries)");
  CLI::App* sub_sweep = app.add_subcommand("sweep", "trend tables over N or grid size");
  add_common(sub_sweep, sweep_o);
  // parsed by hand from one argument, so the list cannot swallow the positional
  sub_sweep->add_option("--dims", sweep_dims, "truncation sweep, comma separated");
  sub_sweep->add_option("--grids", sweep_grids, "grid-size sweep, comma separated");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (app.got_subcommand(sub_build)) return cmd_build(build_o);
    if (app.got_subcommand(sub_verify)) {
      const RunConfig cfg = make_cfg(verify_o);
      return finish(run_suite(cfg), verify_o);
    }
    if (app.got_subcommand(sub_ex31)) {
      RunConfig cfg = make_cfg(ex31_o);
      replace_suite(cfg, {"example31"});
      return finish(run_suite(cfg), ex31_o);
    }
    if (app.got_subcommand(sub_mbasis)) {
      RunConfig cfg = make_cfg(mbasis_o);
      replace_suite(cfg, {"norm_products", "thm31"});
      return finish(run_suite(cfg), mbasis_o);
    }
    if (app.got_subcommand(sub_auerbach)) return cmd_auerbach(auerbach_o);
    if (app.got_subcommand(sub_adjoint))
      return cmd_adjoint(adjoint_o, matrix_path, matrix_opt);
    if (app.got_subcommand(sub_sweep))
      return cmd_sweep(sweep_o, parse_int_list(sweep_dims, "--dims"),
                       parse_int_list(sweep_grids, "--grids"));
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const IoError& e) {
    std::fprintf(stderr, "io error: %s\n", e.what());
    return 2;
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 2;
}
