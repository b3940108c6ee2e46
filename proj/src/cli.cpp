#include "lmoment/cli.hpp"

#include <CLI11.hpp>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <numbers>
#include <ostream>
#include <sstream>

#include "lmoment/arith.hpp"
#include "lmoment/characters.hpp"
#include "lmoment/errors.hpp"
#include "lmoment/format.hpp"
#include "lmoment/lfunc.hpp"
#include "lmoment/moments.hpp"

#ifndef LMOMENT_VERSION
#define LMOMENT_VERSION "dev"
#endif

namespace lmoment::cli {
namespace {

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string versions_string() {
  std::string v = std::string("lmoment ") + LMOMENT_VERSION;
#ifdef __VERSION__
  v += "; compiler " __VERSION__;
#endif
  v += "; c++ " + std::to_string(__cplusplus);
  return v;
}

std::vector<std::int64_t> parse_list(const std::string& text) {
  std::vector<std::int64_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size()) throw CLI::ValidationError("--m-list", "not an integer: " + item);
    out.push_back(v);
  }
  if (out.empty()) throw CLI::ValidationError("--m-list", "empty list");
  return out;
}

/// Destination of one subcommand's output: stdout in a given format, or a file.
struct Sink {
  std::string format;  // "csv" or "json"
  std::string path;    // empty means stdout
};

Sink resolve_sink(const std::string& out, const std::string& default_format) {
  if (out.empty()) return {default_format, ""};
  if (out == "csv" || out == "json") return {out, ""};
  const auto dot = out.rfind('.');
  const std::string ext = dot == std::string::npos ? "" : out.substr(dot + 1);
  return {ext == "csv" || ext == "json" ? ext : default_format, out};
}

class Context {
 public:
  Context(std::ostream& out, RunManifest& manifest) : out_(out), manifest_(manifest) {}

  void emit(const Sink& sink, const std::string& content) {
    if (sink.path.empty()) {
      out_ << content;
      return;
    }
    std::ofstream f(sink.path, std::ios::binary);
    if (!f) throw BoundsError("cannot open output file " + sink.path);
    f << content;
    manifest_.outputs.push_back(sink.path);
  }

 private:
  std::ostream& out_;
  RunManifest& manifest_;
};

std::string complex_cells(std::complex<double> z) {
  return format_double(z.real()) + "," + format_double(z.imag());
}

// Deterministic battery; every numeric line is independent of the thread count.
bool run_selftest(std::ostream& log, int width, std::uint64_t seed) {
  bool ok = true;
  const auto check = [&](const std::string& name, bool pass) {
    log << "check " << name << " " << (pass ? "pass" : "FAIL") << "\n";
    ok = ok && pass;
  };

  const CharacterGroup g5 = CharacterGroup::build(5);
  const auto l1 = l_taylor(g5, g5.quadratic(), 0, 1e-12);
  const double closed = 2 / std::sqrt(5.0) * std::log((1 + std::sqrt(5.0)) / 2);
  log << "L1_quadratic_mod5 " << complex_cells(l1[0]) << "\n";
  check("class_number_formula", std::abs(l1[0] - closed) < 1e-10);

  const CharacterGroup g23 = CharacterGroup::build(23);
  for (int r = 0; r <= 2; ++r) {
    for (const auto& v : curly_l_all(g23, r, 1e-9, width)) {
      log << "curly_l m=23 j=" << v.id.j << " r=" << r << " " << complex_cells(v.value) << "\n";
    }
  }

  const LambdaTable table = LambdaTable::build(100'000);
  const CharacterGroup g13 = CharacterGroup::build(13);
  for (const auto& p : phi_explicit_all(g13, 1, 1e5, table, width)) {
    log << "phi m=13 r=1 x=1e5 j=" << p.chi.j << " " << complex_cells(p.value) << " terms=" << p.terms << "\n";
  }
  const auto direct = phi_explicit(g13, CharacterId{5}, 1, 1e5, table);
  const auto bucketed = phi_explicit_all(g13, 1, 1e5, table, width)[5];
  check("phi_routes_agree", std::abs(direct.value - bucketed.value) < 1e-10);

  log << "psi_1e5 " << format_double(table.chebyshev_psi(100'000)) << "\n";
  log << "lambda_rk r=1 k=2 n=720 " << format_double(lambda_rk(table, {1, 2, 720})) << "\n";

  const MuConstant mu = mu_partial_sum(1, 1, 1, 100'000);
  log << "mu " << to_json(mu) << "\n";
  for (int r = 0; r <= 2; ++r) {
    const auto d = mu_diagonal_reference(r);
    log << "mu_diag r=" << r << " " << format_double(d.value) << " " << format_double(d.error_bound) << "\n";
  }
  const auto mu_ref = mu_diagonal_reference(1);
  check("mu_partial_below_reference", mu.value <= mu_ref.value + mu_ref.error_bound);

  MomentOptions opts;
  opts.width = width;
  opts.mu_truncation = 200'000;
  for (auto [a, b, r] : {std::tuple{1, 1, 0}, std::tuple{2, 1, 1}, std::tuple{1, 2, 1}}) {
    const auto rep = empirical_moment(101, a, b, r, MomentMethod::taylor, opts);
    log << "moment " << to_json(rep) << "\n";
  }
  const auto phi_rep = empirical_moment(101, 1, 1, 0, MomentMethod::phi, opts);
  log << "moment " << to_json(phi_rep) << "\n";
  const auto t1 = empirical_moment(101, 1, 2, 1, MomentMethod::taylor, opts);
  const auto t2 = empirical_moment(101, 2, 1, 1, MomentMethod::taylor, opts);
  check("hermitian_pairing", t1.empirical == std::conj(t2.empirical));

  const auto oc = ortho_check(11, 2, 2, 11.0, mangoldt_weight(table, 0));
  log << "ortho m=11 a=2 b=2 " << complex_cells(oc.lhs) << " " << complex_cells(oc.rhs) << "\n";
  check("orthogonality", oc.discrepancy <= 1e-10 * (1 + std::abs(oc.lhs)));

  const auto pert = pab_perturbation_check(random_perturbation_samples(2000, seed));
  log << "perturbation samples=" << pert.samples << " violations=" << pert.violations
      << " worst_ratio=" << format_double(pert.worst_ratio) << "\n";
  check("perturbation", pert.violations == 0);

  log << "selftest " << (ok ? "PASS" : "FAIL") << "\n";
  return ok;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Moments of higher derivatives of L'/L(s, chi) at s = 1", "lmoment"};
  app.require_subcommand(1);

  RunManifest manifest;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (i) manifest.command_line += ' ';
    manifest.command_line += args[i];
  }
  int threads = 1;
  std::uint64_t seed = 20240601;
  std::string manifest_path;
  std::int64_t table_cap = kDefaultTableCap;
  std::int64_t modulus_cap = kDefaultModulusCap;
  std::int64_t enum_cap = kDefaultEnumerationCap;
  app.add_option("--threads", threads, "Worker threads (LMOMENT_THREADS overrides)")->check(CLI::Range(1, 1024));
  app.add_option("--seed", seed, "Seed for randomized checks");
  app.add_option("--manifest", manifest_path, "Write the run manifest here");
  app.add_option("--max-table", table_cap, "Largest sieve limit")->check(CLI::PositiveNumber);
  app.add_option("--max-m", modulus_cap, "Largest modulus")->check(CLI::PositiveNumber);
  app.add_option("--enum-cap", enum_cap, "Largest tuple enumeration")->check(CLI::PositiveNumber);

  int a = 1;
  int b = 1;
  int r = 0;
  double tail = 1e-6;
  std::string out_spec;
  std::int64_t m = 0;
  std::string method = "taylor";
  double x = 0.0;
  double eps = 1e-9;
  double moment_eps = MomentOptions{}.eps;
  std::int64_t n = 1;
  int k = 1;
  std::int64_t upto = 0;
  std::string m_list_text;
  std::int64_t mu_truncation = MomentOptions{}.mu_truncation;
  std::string weight = "unit";

  auto* mu_cmd = app.add_subcommand("mu", "Limit constant mu^(a,b)(r) as JSON");
  mu_cmd->add_option("--a", a)->required()->check(CLI::NonNegativeNumber);
  mu_cmd->add_option("--b", b)->required()->check(CLI::NonNegativeNumber);
  mu_cmd->add_option("--r", r)->required()->check(CLI::NonNegativeNumber);
  mu_cmd->add_option("--tail", tail, "Target tail bound")->check(CLI::PositiveNumber);
  mu_cmd->add_option("--out", out_spec, "json or a file path");

  auto* lambda_cmd = app.add_subcommand("lambda", "Generalized von Mangoldt convolution Lambda_{r,k}(n)");
  lambda_cmd->add_option("--n", n)->required()->check(CLI::PositiveNumber);
  lambda_cmd->add_option("--r", r)->check(CLI::NonNegativeNumber);
  lambda_cmd->add_option("--k", k)->check(CLI::NonNegativeNumber);
  lambda_cmd->add_option("--upto", upto, "Emit CSV n,value for 1..n instead of one JSON value");
  lambda_cmd->add_option("--out", out_spec, "json, csv or a file path");

  auto* chars_cmd = app.add_subcommand("characters", "Character table utilities");
  chars_cmd->require_subcommand(1);
  auto* dump_cmd = chars_cmd->add_subcommand("dump", "Character table as CSV");
  dump_cmd->add_option("--m", m)->required();
  dump_cmd->add_option("--out", out_spec, "csv or a file path");

  auto* lvals_cmd = app.add_subcommand("lvals", "L'/L derivatives at s = 1 for every non-principal character");
  lvals_cmd->add_option("--m", m)->required();
  lvals_cmd->add_option("--r", r)->required()->check(CLI::NonNegativeNumber);
  lvals_cmd->add_option("--method", method)->check(CLI::IsMember({"taylor", "phi"}));
  lvals_cmd->add_option("--x", x, "Summation bound for the phi method (default m^2)");
  lvals_cmd->add_option("--eps", eps)->check(CLI::PositiveNumber);
  lvals_cmd->add_option("--out", out_spec, "csv, json or a file path");

  auto* moments_cmd = app.add_subcommand("moments", "Character average of P^(a,b) against its limit");
  moments_cmd->add_option("--m", m)->required();
  moments_cmd->add_option("--a", a)->required()->check(CLI::NonNegativeNumber);
  moments_cmd->add_option("--b", b)->required()->check(CLI::NonNegativeNumber);
  moments_cmd->add_option("--r", r)->required()->check(CLI::NonNegativeNumber);
  moments_cmd->add_option("--method", method)->check(CLI::IsMember({"taylor", "phi"}));
  moments_cmd->add_option("--eps", moment_eps)->check(CLI::PositiveNumber);
  moments_cmd->add_option("--mu-truncation", mu_truncation)->check(CLI::PositiveNumber);
  moments_cmd->add_option("--out", out_spec, "json or a file path");

  auto* converge_cmd = app.add_subcommand("converge", "Moment error across a list of moduli (CSV)");
  converge_cmd->add_option("--m-list", m_list_text)->required();
  converge_cmd->add_option("--a", a)->required()->check(CLI::NonNegativeNumber);
  converge_cmd->add_option("--b", b)->required()->check(CLI::NonNegativeNumber);
  converge_cmd->add_option("--r", r)->required()->check(CLI::NonNegativeNumber);
  converge_cmd->add_option("--method", method)->check(CLI::IsMember({"taylor", "phi"}));
  converge_cmd->add_option("--eps", moment_eps)->check(CLI::PositiveNumber);
  converge_cmd->add_option("--mu-truncation", mu_truncation)->check(CLI::PositiveNumber);
  converge_cmd->add_option("--out", out_spec, "csv or a file path");

  auto* ortho_cmd = app.add_subcommand("check-ortho", "Both sides of the character orthogonality identity");
  ortho_cmd->add_option("--m", m)->required();
  ortho_cmd->add_option("--a", a)->required()->check(CLI::NonNegativeNumber);
  ortho_cmd->add_option("--b", b)->required()->check(CLI::NonNegativeNumber);
  ortho_cmd->add_option("--x", x, "Summation bound (default m)");
  ortho_cmd->add_option("--weight", weight)->check(CLI::IsMember({"unit", "mangoldt"}));
  ortho_cmd->add_option("--r", r, "Log power in the mangoldt weight")->check(CLI::NonNegativeNumber);
  ortho_cmd->add_option("--out", out_spec, "json or a file path");

  auto* selftest_cmd = app.add_subcommand("selftest", "Deterministic self-check battery");
  selftest_cmd->add_option("--out", out_spec, "File path for the numeric log");

  std::vector<std::string> argv_store(args.begin(), args.end());
  if (argv_store.empty()) argv_store.emplace_back("lmoment");
  std::vector<char*> argv;
  for (auto& s : argv_store) argv.push_back(s.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n\n" << app.help("", CLI::AppFormatMode::All);
    return 2;
  }

  if (const char* env = std::getenv("LMOMENT_THREADS")) {
    try {
      threads = std::max(1, std::stoi(env));
    } catch (const std::exception&) {
      err << "usage error: LMOMENT_THREADS must be an integer\n";
      return 2;
    }
  }
  manifest.seed = seed;
  manifest.thread_count = threads;
  manifest.versions = versions_string();
  manifest.timestamp = utc_timestamp();
  manifest.table_cap = table_cap;
  manifest.modulus_cap = modulus_cap;
  manifest.enumeration_cap = enum_cap;
  Context ctx(out, manifest);

  const auto check_modulus = [&](std::int64_t mod) {
    if (mod > modulus_cap) throw BoundsError("modulus exceeds --max-m");
  };

  int status = 0;
  try {
    if (mu_cmd->parsed()) {
      ctx.emit(resolve_sink(out_spec, "json"), to_json(mu_constant(a, b, r, tail, table_cap)) + "\n");
    } else if (lambda_cmd->parsed()) {
      const std::int64_t last = upto > 0 ? upto : n;
      const LambdaTable table = LambdaTable::build(std::max<std::int64_t>(last, 2), table_cap);
      if (upto > 0) {
        const ConvolutionTable conv(table, r, k, upto);
        std::string csv = "n,value\n";
        for (std::int64_t i = 1; i <= upto; ++i) csv += std::to_string(i) + "," + format_double(conv.value(k, i)) + "\n";
        ctx.emit(resolve_sink(out_spec, "csv"), csv);
      } else {
        ctx.emit(resolve_sink(out_spec, "json"),
                 JsonObject().add("r", r).add("k", k).add("n", n).add("value", lambda_rk(table, {r, k, n})).str() + "\n");
      }
    } else if (dump_cmd->parsed()) {
      check_modulus(m);
      ctx.emit(resolve_sink(out_spec, "csv"), CharacterGroup::build(m, modulus_cap).dump_csv());
    } else if (lvals_cmd->parsed()) {
      check_modulus(m);
      const CharacterGroup group = CharacterGroup::build(m, modulus_cap);
      const Sink sink = resolve_sink(out_spec, "csv");
      struct Row {
        std::int64_t j;
        std::complex<double> v;
        double err;
      };
      std::vector<Row> rows;
      if (method == "taylor") {
        for (const auto& v : curly_l_all(group, r, eps, threads)) rows.push_back({v.id.j, v.value, v.err});
      } else {
        const double bound = x > 0 ? x : static_cast<double>(m) * static_cast<double>(m);
        const LambdaTable table =
            LambdaTable::build(std::max<std::int64_t>(static_cast<std::int64_t>(std::ceil(bound)) - 1, 2), table_cap);
        const double sign = (r + 1) % 2 == 0 ? 1.0 : -1.0;
        const auto phis = phi_explicit_all(group, r, bound, table, threads);
        for (std::size_t j = 1; j < phis.size(); ++j) {
          // No rigorous bound for the truncated explicit sum.
          rows.push_back({phis[j].chi.j, sign * phis[j].value, std::nan("")});
        }
      }
      std::string text;
      if (sink.format == "json") {
        text = "[";
        for (std::size_t i = 0; i < rows.size(); ++i) {
          if (i) text += ",\n ";
          text += JsonObject()
                      .add("j", rows[i].j)
                      .add("re", rows[i].v.real())
                      .add("im", rows[i].v.imag())
                      .add("err_est", rows[i].err)
                      .str();
        }
        text += "]\n";
      } else {
        text = "j,re,im,err_est\n";
        for (const auto& row : rows) {
          text += std::to_string(row.j) + "," + complex_cells(row.v) + "," + format_double(row.err) + "\n";
        }
      }
      ctx.emit(sink, text);
    } else if (moments_cmd->parsed()) {
      check_modulus(m);
      MomentOptions opts;
      opts.eps = moment_eps;
      opts.width = threads;
      opts.mu_truncation = mu_truncation;
      const auto rep = empirical_moment(m, a, b, r, parse_method(method), opts);
      ctx.emit(resolve_sink(out_spec, "json"), to_json(rep) + "\n");
    } else if (converge_cmd->parsed()) {
      const auto list = parse_list(m_list_text);
      for (auto mod : list) check_modulus(mod);
      MomentOptions opts;
      opts.eps = moment_eps;
      opts.width = threads;
      opts.mu_truncation = mu_truncation;
      const auto study = convergence_study(list, a, b, r, parse_method(method), opts);
      std::string csv = "m,re_empirical,im_empirical,prediction,abs_error,normalized_error\n";
      for (const auto& rep : study.reports) {
        csv += std::to_string(rep.m) + "," + complex_cells(rep.empirical) + "," + format_double(rep.prediction) +
               "," + format_double(rep.abs_error) + "," + format_double(rep.normalized_error) + "\n";
      }
      csv += "slope," + format_double(study.slope) + "\n";
      ctx.emit(resolve_sink(out_spec, "csv"), csv);
    } else if (ortho_cmd->parsed()) {
      check_modulus(m);
      const double bound = x > 0 ? x : static_cast<double>(m);
      const LambdaTable table =
          LambdaTable::build(std::max<std::int64_t>(static_cast<std::int64_t>(std::ceil(bound)), 2), table_cap);
      const WeightFn g = weight == "unit" ? unit_weight() : mangoldt_weight(table, r);
      const auto oc = ortho_check(m, a, b, bound, g, enum_cap);
      ctx.emit(resolve_sink(out_spec, "json"), JsonObject()
                                                   .add("m", oc.m)
                                                   .add("a", oc.a)
                                                   .add("b", oc.b)
                                                   .add("x", oc.x)
                                                   .add("weight", weight)
                                                   .add("lhs_re", oc.lhs.real())
                                                   .add("lhs_im", oc.lhs.imag())
                                                   .add("rhs", oc.rhs.real())
                                                   .add("discrepancy", oc.discrepancy)
                                                   .add("lhs_nonprincipal_re", oc.lhs_nonprincipal.real())
                                                   .add("lhs_nonprincipal_im", oc.lhs_nonprincipal.imag())
                                                   .add("discrepancy_nonprincipal", oc.discrepancy_nonprincipal)
                                                   .str() + "\n");
    } else if (selftest_cmd->parsed()) {
      std::ostringstream log;
      const bool ok = run_selftest(log, threads, seed);
      ctx.emit(resolve_sink(out_spec, "csv"), log.str());
      status = ok ? 0 : 1;
    }
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    if (const auto* re = dynamic_cast<const ResourceError*>(&e)) {
      err << "best achieved bound: " << format_double(re->best_achieved()) << "\n";
    }
    status = 1;
  } catch (const std::bad_alloc&) {
    err << "error: out of memory\n";
    status = 1;
  }

  std::string target = manifest_path;
  if (target.empty() && !manifest.outputs.empty()) target = manifest.outputs.front() + ".manifest.json";
  if (!target.empty()) {
    std::ofstream f(target, std::ios::binary);
    if (!f) {
      err << "error: cannot write manifest " << target << "\n";
      return 1;
    }
    f << to_json(manifest) << "\n";
  }
  return status;
}

}  // namespace

std::string to_json(const RunManifest& manifest) {
  return JsonObject()
      .add("command_line", manifest.command_line)
      .add("seed", static_cast<std::int64_t>(manifest.seed))
      .add("thread_count", manifest.thread_count)
      .add("versions", manifest.versions)
      .add("timestamp", manifest.timestamp)
      .add_strings("outputs", manifest.outputs)
      .add("table_cap", manifest.table_cap)
      .add("modulus_cap", manifest.modulus_cap)
      .add("enumeration_cap", manifest.enumeration_cap)
      .str();
}

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  return run(args, out, err);
}

}  // namespace lmoment::cli
