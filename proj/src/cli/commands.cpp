#include <cmath>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rhsharp/bellman.hpp"
#include "rhsharp/cli.hpp"
#include "rhsharp/embedding.hpp"
#include "rhsharp/errors.hpp"
#include "rhsharp/ndim.hpp"
#include "rhsharp/roots.hpp"
#include "rhsharp/weights.hpp"

namespace rhsharp::cli {

namespace {

class UsageError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct Inputs {
  std::string p;
  std::optional<double> q;
  std::optional<double> t;
  std::optional<double> delta;
  std::optional<double> x1;
  std::optional<double> x2;
  std::optional<int> n;
  std::string branch = "plus";
  int depth = 12;
  double tol = 1e-6;
  bool limit = false;
  bool grid_only = false;
};

template <class T>
T need(const std::optional<T>& v, const char* flag) {
  if (!v) throw UsageError(std::string("missing required flag --") + flag);
  return *v;
}

ExponentP need_p(const Inputs& in) {
  if (in.p.empty()) throw UsageError("missing required flag --p");
  return ExponentP::parse(in.p);
}

Branch parse_branch(const std::string& b) {
  if (b == "plus") return Branch::Plus;
  if (b == "minus") return Branch::Minus;
  throw UsageError("--branch must be plus or minus");
}

RootConfig root_config() {
  RootConfig cfg;
  if (const char* env = std::getenv("SHARP_WEIGHTS_TOL")) {
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end == env || *end != '\0' || !(v > 0.0)) {
      throw UsageError("SHARP_WEIGHTS_TOL must be a positive number");
    }
    cfg.rel_tol = v;
  }
  return cfg;
}

Record cmd_constants(const Inputs& in, const RootConfig& cfg) {
  const ExponentP p = need_p(in);
  const double q = need(in.q, "q");
  const double delta = need(in.delta, "delta");
  const auto cq = aq_constant(p, q, delta, cfg);
  const auto cinf = ainf_constant(p, delta, cfg);
  Record r;
  r.add("p", p.to_string()).add("q", q).add("delta", delta);
  r.add("q_star", q_star(p, delta, cfg)).add("c_q", cq.constant).add("c_inf", cinf.constant);
  return r;
}

Record cmd_gehring(const Inputs& in, const RootConfig& cfg) {
  const double p = need_p(in).value();
  const double t = need(in.t, "t");
  const double delta = need(in.delta, "delta");
  const auto ct = rht_constant(p, t, delta, cfg);
  Record r;
  r.add("p", p).add("t", t).add("delta", delta);
  r.add("t_star", t_star(p, delta, cfg)).add("c_t", ct.constant);
  return r;
}

Record cmd_bellman(const Inputs& in, const RootConfig& cfg) {
  const ExponentP p = need_p(in);
  const double q = need(in.q, "q");
  const double delta = need(in.delta, "delta");
  const DomainPoint x{need(in.x1, "x1"), need(in.x2, "x2")};
  const Parameters params(p, q, delta, cfg);
  Record r;
  r.add("p", p.to_string()).add("q", q).add("delta", delta).add("x1", x.x1).add("x2", x.x2);
  if (p.is_finite()) {
    const auto [rm, rp] = r_pair(p.value(), delta, x, cfg);
    r.add("r_minus", rm).add("r_plus", rp);
  }
  r.add("bellman", bellman_value(params, x));
  if (in.limit) r.add("bellman_inf", bellman_infinity_value(p, delta, x, cfg));
  return r;
}

Record cmd_extremal(const Inputs& in, const RootConfig& cfg) {
  const ExponentP p = need_p(in);
  const double delta = need(in.delta, "delta");
  const DomainPoint x{need(in.x1, "x1"), need(in.x2, "x2")};
  const Branch branch = parse_branch(in.branch);
  const PowerWeight w = extremal_weight(p, delta, x, branch, cfg);

  Record r;
  r.add("p", p.to_string()).add("delta", delta).add("x1", x.x1).add("x2", x.x2).add("branch", in.branch);
  r.add("c", w.c()).add("a", w.a()).add("nu", w.nu());
  r.add("resid_mean", moment(w, 1.0).value() - x.x1);
  if (p.is_inf()) {
    r.add("resid_x2", ess_sup(w, 0.0, 1.0) - x.x2);
    r.add("resid_norm", rhinf_norm_closed(w) - delta);
  } else {
    r.add("resid_x2", moment(w, p.value()).value() - x.x2);
    r.add("resid_norm", rhp_norm_closed(w, p.value()) - delta);
  }
  return r;
}

struct VerifyOutcome {
  Record record;
  bool pass = false;
};

VerifyOutcome cmd_verify(const Inputs& in, const RootConfig& cfg) {
  const ExponentP p = need_p(in);
  const double delta = need(in.delta, "delta");
  if (in.q && in.t) throw UsageError("verify takes --q or --t, not both");

  // The sharp constants are attained by the extremal weight at a point of the
  // upper boundary, where the weight is a pure power on [0, 1].
  const DomainPoint x = p.is_inf() ? DomainPoint{1.0, delta}
                                   : DomainPoint{1.0, std::pow(delta, p.value())};
  std::string mode;
  FunctionalKind kind;
  ExtReal constant;
  Branch branch = Branch::Plus;
  if (in.t) {
    const double pv = p.value();
    mode = "rh_t";
    kind = functional::RHp{*in.t};
    constant = rht_constant(pv, *in.t, delta, cfg).constant;
    branch = Branch::Minus;
  } else if (in.q) {
    mode = "a_q";
    kind = functional::Aq{*in.q};
    constant = aq_constant(p, *in.q, delta, cfg).constant;
  } else {
    mode = "a_inf";
    kind = functional::AInf{};
    constant = ainf_constant(p, delta, cfg).constant;
  }

  const PowerWeight w = extremal_weight(p, delta, x, branch, cfg);
  SupSearchOptions opts;
  opts.inject_candidates = !in.grid_only;
  const SupResult sup = sup_ratio_search(w, kind, in.depth, opts);

  double rel_err = 0.0;
  bool pass = false;
  if (constant.is_inf() || sup.sup.is_inf()) {
    pass = constant.is_inf() && sup.sup.is_inf();
    rel_err = pass ? 0.0 : std::numeric_limits<double>::infinity();
  } else {
    rel_err = std::abs(sup.sup.value() - constant.value()) / constant.value();
    pass = rel_err <= in.tol;
  }

  Record r;
  r.add("mode", mode).add("p", p.to_string()).add("delta", delta);
  if (in.q) r.add("q", *in.q);
  if (in.t) r.add("t", *in.t);
  r.add("depth", static_cast<long long>(in.depth)).add("constant", constant).add("sup", sup.sup);
  r.add("alpha", sup.alpha).add("beta", sup.beta).add("rel_err", rel_err).add("tol", in.tol);
  r.add("result", std::string(pass ? "pass" : "fail"));
  return {r, pass};
}

Record cmd_ndim(const Inputs& in, const RootConfig& cfg) {
  const double p = need_p(in).value();
  const double q = need(in.q, "q");
  const int n = need(in.n, "n");
  const double delta = need(in.delta, "delta");
  const NDimBound b = ndim_aq_bound(p, q, n, delta, cfg);
  Record r;
  r.add("p", p).add("q", q).add("n", static_cast<long long>(n)).add("delta", delta);
  r.add("threshold", delta_threshold(p, n)).add("y", b.y).add("epsilon", b.epsilon).add("c", b.constant);
  return r;
}

struct SweepSpec {
  std::string command;
  std::string vary;
  double from = 0.0;
  double to = 0.0;
  int steps = 0;
};

std::vector<Record> cmd_sweep(const Inputs& base, const SweepSpec& spec, const RootConfig& cfg) {
  if (spec.steps < 2) throw UsageError("sweep: --steps must be >= 2");
  if (!(spec.from <= spec.to)) throw UsageError("sweep: requires --from <= --to");
  std::vector<Record> rows;
  rows.reserve(static_cast<std::size_t>(spec.steps));
  for (int i = 0; i < spec.steps; ++i) {
    const double v = i + 1 == spec.steps
                         ? spec.to
                         : spec.from + (spec.to - spec.from) * static_cast<double>(i) / (spec.steps - 1);
    Inputs in = base;
    if (spec.vary == "delta") {
      in.delta = v;
    } else if (spec.vary == "q") {
      in.q = v;
    } else if (spec.vary == "t") {
      in.t = v;
    } else if (spec.vary == "p") {
      std::ostringstream os;
      os.precision(17);
      os << v;
      in.p = os.str();
    } else {
      throw UsageError("sweep: --vary must be one of delta, q, t, p");
    }
    try {
      if (spec.command == "constants") {
        rows.push_back(cmd_constants(in, cfg));
      } else if (spec.command == "gehring") {
        rows.push_back(cmd_gehring(in, cfg));
      } else if (spec.command == "ndim") {
        rows.push_back(cmd_ndim(in, cfg));
      } else if (spec.command == "bellman") {
        rows.push_back(cmd_bellman(in, cfg));
      } else {
        throw UsageError("sweep: --command must be one of constants, gehring, ndim, bellman");
      }
    } catch (const DomainError& e) {
      throw DomainError("sweep point " + std::to_string(i) + ": " + e.what());
    }
  }
  return rows;
}

void add_common(CLI::App* sub, Inputs& in, std::string& format) {
  sub->add_option("--format", format, "Output format: plain, csv or json")
      ->check(CLI::IsMember({"plain", "csv", "json"}));
  (void)in;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Sharp A_q, A_inf and RH_t constants for reverse-Hoelder weight classes", "rhsharp"};
  app.require_subcommand(1);

  Inputs in;
  SweepSpec sweep;
  std::string format = "plain";

  auto p_opt = [&](CLI::App* s) { s->add_option("--p", in.p, "Exponent p > 1, or inf")->required(); };
  auto delta_opt = [&](CLI::App* s) { s->add_option("--delta", in.delta, "Reverse-Hoelder bound delta >= 1"); };

  auto* constants = app.add_subcommand("constants", "Sharp A_q and A_inf constants");
  p_opt(constants);
  constants->add_option("--q", in.q, "A_q exponent q > 1");
  delta_opt(constants);
  add_common(constants, in, format);

  auto* gehring = app.add_subcommand("gehring", "Sharp RH_t constant (Gehring self-improvement)");
  p_opt(gehring);
  gehring->add_option("--t", in.t, "Target exponent t >= p");
  delta_opt(gehring);
  add_common(gehring, in, format);

  auto* bellman = app.add_subcommand("bellman", "Evaluate the Bellman function at (x1, x2)");
  p_opt(bellman);
  bellman->add_option("--q", in.q, "Exponent q (q > 1, or (p-1)/p < q < 1)");
  delta_opt(bellman);
  bellman->add_option("--x1", in.x1, "First coordinate <w>");
  bellman->add_option("--x2", in.x2, "Second coordinate <w^p> (ess sup w for p = inf)");
  bellman->add_flag("--limit", in.limit, "Also print the q -> inf limit");
  add_common(bellman, in, format);

  auto* extremal = app.add_subcommand("extremal", "Extremal power weight representing (x1, x2)");
  p_opt(extremal);
  delta_opt(extremal);
  extremal->add_option("--x1", in.x1, "First coordinate");
  extremal->add_option("--x2", in.x2, "Second coordinate");
  extremal->add_option("--branch", in.branch, "plus (A_q side) or minus (Gehring side)")
      ->check(CLI::IsMember({"plus", "minus"}));
  add_common(extremal, in, format);

  auto* verify = app.add_subcommand("verify", "Check a sharp constant against a brute-force interval search");
  p_opt(verify);
  verify->add_option("--q", in.q, "Check the A_q constant");
  verify->add_option("--t", in.t, "Check the RH_t constant");
  delta_opt(verify);
  verify->add_option("--depth", in.depth, "Dyadic grid depth (2^depth cells)")->check(CLI::Range(1, 24));
  verify->add_option("--tol", in.tol, "Relative tolerance");
  verify->add_flag("--grid-only", in.grid_only, "Do not add 0, a, 1 to the grid endpoints");
  add_common(verify, in, format);

  auto* ndim = app.add_subcommand("ndim", "Cube A_q upper bound in n dimensions");
  p_opt(ndim);
  ndim->add_option("--q", in.q, "A_q exponent q > 1");
  ndim->add_option("--n", in.n, "Dimension n >= 2");
  delta_opt(ndim);
  add_common(ndim, in, format);

  auto* sw = app.add_subcommand("sweep", "Tabulate one command over a range of one parameter");
  sw->add_option("--command", sweep.command, "constants, gehring, ndim or bellman")->required();
  sw->add_option("--vary", sweep.vary, "delta, q, t or p")->required();
  sw->add_option("--from", sweep.from, "First value")->required();
  sw->add_option("--to", sweep.to, "Last value")->required();
  sw->add_option("--steps", sweep.steps, "Number of grid points (>= 2)")->required();
  sw->add_option("--p", in.p, "Exponent p > 1, or inf");
  sw->add_option("--q", in.q, "Fixed q");
  sw->add_option("--t", in.t, "Fixed t");
  delta_opt(sw);
  sw->add_option("--n", in.n, "Fixed n");
  sw->add_option("--x1", in.x1, "Fixed x1");
  sw->add_option("--x2", in.x2, "Fixed x2");
  add_common(sw, in, format);

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  try {
    const RootConfig cfg = root_config();
    const Format fmt = parse_format(format);
    if (*constants) {
      write_records(out, {cmd_constants(in, cfg)}, fmt);
    } else if (*gehring) {
      write_records(out, {cmd_gehring(in, cfg)}, fmt);
    } else if (*bellman) {
      write_records(out, {cmd_bellman(in, cfg)}, fmt);
    } else if (*extremal) {
      write_records(out, {cmd_extremal(in, cfg)}, fmt);
    } else if (*verify) {
      const auto outcome = cmd_verify(in, cfg);
      write_records(out, {outcome.record}, fmt);
      if (!outcome.pass) {
        err << "verify: brute-force supremum does not match the closed-form constant\n";
        return kExitVerifyFailed;
      }
    } else if (*ndim) {
      write_records(out, {cmd_ndim(in, cfg)}, fmt);
    } else if (*sw) {
      write_records(out, cmd_sweep(in, sweep, cfg), fmt);
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const UnsupportedError& e) {
    err << "unsupported: " << e.what() << '\n';
    return kExitUsage;
  } catch (const IterationError& e) {
    err << "solver error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitOk;
}

}  // namespace rhsharp::cli
