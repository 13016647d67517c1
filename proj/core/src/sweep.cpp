#include "flexd/sweep.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include "flexd/errors.hpp"
#include "flexd/units.hpp"

namespace flexd {

namespace {

// Shortest round-trip formatting; locale-free so CSV bytes are stable.
std::string format_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string join_doubles(const std::vector<double>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) out += ',';
    out += format_double(values[i]);
  }
  return out;
}

OutageInputs fd_outage_inputs(const ResolvedSlot& rs) {
  OutageInputs o = rs.outage;
  o.omega_k = cut_level(rs.inputs.fd_isl_sinr_k, rs.inputs.flow_k.backlog_sinr);
  o.omega_l = cut_level(rs.inputs.fd_isl_sinr_l, rs.inputs.flow_l.backlog_sinr);
  return o;
}

// Closed-form outage of `scheme` at threshold zeta, averaged over the
// horizon (trials cycle slots the same way).
double closed_outage(const Scenario& sc, const std::vector<ResolvedSlot>& slots, Scheme scheme,
                     double zeta) {
  double sum = 0.0;
  for (const ResolvedSlot& rs : slots) {
    switch (scheme) {
      case Scheme::FlexD:
        sum += outage_probability(zeta, rs.outage);
        break;
      case Scheme::Fd:
        sum += outage_probability(zeta, fd_outage_inputs(rs));
        break;
      case Scheme::HdFixedK:
        sum += single_flow_outage(zeta, rs.outage.omega_k, rs.outage.dl_mean_k, sc.fading);
        break;
      case Scheme::HdFixedL:
        sum += single_flow_outage(zeta, rs.outage.omega_l, rs.outage.dl_mean_l, sc.fading);
        break;
      case Scheme::HdAlternating: {
        const bool k_active = rs.inputs.slot % 2 == 0;
        sum += k_active ? single_flow_outage(zeta, rs.outage.omega_k, rs.outage.dl_mean_k,
                                             sc.fading)
                        : single_flow_outage(zeta, rs.outage.omega_l, rs.outage.dl_mean_l,
                                             sc.fading);
        break;
      }
    }
  }
  return sum / static_cast<double>(slots.size());
}

std::string region_label_for(const ResolvedSlot& rs, Scheme scheme, double zeta) {
  switch (scheme) {
    case Scheme::FlexD:
      return to_string(outage_region(zeta, rs.outage));
    case Scheme::Fd:
      return to_string(outage_region(zeta, fd_outage_inputs(rs)));
    case Scheme::HdFixedK:
      return zeta >= rs.outage.omega_k ? "saturated" : "flow-k-dl";
    case Scheme::HdFixedL:
      return zeta >= rs.outage.omega_l ? "saturated" : "flow-l-dl";
    case Scheme::HdAlternating: {
      const bool k_active = rs.inputs.slot % 2 == 0;
      const double omega = k_active ? rs.outage.omega_k : rs.outage.omega_l;
      return zeta >= omega ? "saturated" : (k_active ? "flow-k-dl" : "flow-l-dl");
    }
  }
  return "?";
}

// Closed-form Jensen EE bound of `scheme` at one slot.
double closed_ee_bound_at(const Scenario& sc, const ResolvedSlot& rs, Scheme scheme) {
  const double w = sc.rf.bandwidth_hz;
  const double power = sc.scheme_power_w(scheme);
  switch (scheme) {
    case Scheme::FlexD:
      return energy_efficiency_bound(mean_system_sinr(rs.outage, sc.series), w, power);
    case Scheme::Fd:
      return energy_efficiency_bound(mean_system_sinr(fd_outage_inputs(rs), sc.series), w,
                                     power);
    case Scheme::HdFixedK:
      return energy_efficiency_bound(
          mean_single_flow_sinr(rs.outage.omega_k, rs.outage.dl_mean_k, sc.fading, sc.series), w,
          power);
    case Scheme::HdFixedL:
      return energy_efficiency_bound(
          mean_single_flow_sinr(rs.outage.omega_l, rs.outage.dl_mean_l, sc.fading, sc.series), w,
          power);
    case Scheme::HdAlternating: {
      const bool k_active = rs.inputs.slot % 2 == 0;
      const double omega = k_active ? rs.outage.omega_k : rs.outage.omega_l;
      const double mean = k_active ? rs.outage.dl_mean_k : rs.outage.dl_mean_l;
      return energy_efficiency_bound(mean_single_flow_sinr(omega, mean, sc.fading, sc.series), w,
                                     power);
    }
  }
  throw std::logic_error("closed_ee_bound_at: unknown scheme");
}

double closed_ee_bound(const Scenario& sc, const std::vector<ResolvedSlot>& slots,
                       Scheme scheme) {
  double sum = 0.0;
  for (const ResolvedSlot& rs : slots) sum += closed_ee_bound_at(sc, rs, scheme);
  return sum / static_cast<double>(slots.size());
}

std::vector<ResolvedSlot> resolve_all(const Scenario& sc) {
  std::vector<ResolvedSlot> slots;
  slots.reserve(static_cast<std::size_t>(sc.timeline.horizon_slots));
  for (int t = 0; t < sc.timeline.horizon_slots; ++t) slots.push_back(sc.resolve_slot(t));
  return slots;
}

}  // namespace

const char* to_string(SweepVariable v) {
  switch (v) {
    case SweepVariable::Zeta: return "zeta";
    case SweepVariable::PowerDbw: return "power";
    case SweepVariable::Slot: return "slot";
  }
  return "?";
}

SweepVariable sweep_variable_from_string(const std::string& name) {
  if (name == "zeta") return SweepVariable::Zeta;
  if (name == "power") return SweepVariable::PowerDbw;
  if (name == "slot") return SweepVariable::Slot;
  throw ConfigError("--var '" + name + "'", "expected zeta, power, or slot");
}

std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> grid;
  const auto parse_number = [](const std::string& s) {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw ConfigError("--grid", "malformed number '" + s + "'");
    return v;
  };
  if (text.rfind("lin:", 0) == 0 || text.rfind("log:", 0) == 0) {
    const bool log_scale = text[1] == 'o';
    std::stringstream ss(text.substr(4));
    std::string lo_s, hi_s, n_s;
    if (!std::getline(ss, lo_s, ':') || !std::getline(ss, hi_s, ':') ||
        !std::getline(ss, n_s, ':') || !ss.eof()) {
      throw ConfigError("--grid", "expected lin:<lo>:<hi>:<count> or log:<lo>:<hi>:<count>");
    }
    const double lo = parse_number(lo_s);
    const double hi = parse_number(hi_s);
    const int n = static_cast<int>(parse_number(n_s));
    if (n < 1) throw ConfigError("--grid", "count must be >= 1");
    if (n == 1) {
      grid.push_back(lo);
    } else {
      if (log_scale && (lo <= 0.0 || hi <= 0.0)) {
        throw ConfigError("--grid", "log grid endpoints must be > 0");
      }
      for (int i = 0; i < n; ++i) {
        const double frac = static_cast<double>(i) / (n - 1);
        grid.push_back(log_scale ? lo * std::pow(hi / lo, frac) : lo + (hi - lo) * frac);
      }
    }
  } else {
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) grid.push_back(parse_number(tok));
  }
  if (grid.empty()) throw ConfigError("--grid", "must not be empty");
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i] > grid[i - 1])) throw ConfigError("--grid", "must be strictly increasing");
  }
  return grid;
}

SweepResult run_sweep(const Scenario& scenario, const SweepSpec& spec,
                      const SweepOptions& options) {
  if (spec.grid.empty()) throw ConfigError("sweep.grid", "must not be empty");
  if (spec.schemes.empty()) throw ConfigError("sweep.schemes", "must not be empty");
  for (std::size_t i = 1; i < spec.grid.size(); ++i) {
    if (!(spec.grid[i] > spec.grid[i - 1])) {
      throw ConfigError("sweep.grid", "must be strictly increasing");
    }
  }

  SweepResult result;
  result.spec = spec;

  std::string scheme_list;
  for (std::size_t i = 0; i < spec.schemes.size(); ++i) {
    if (i > 0) scheme_list += ',';
    scheme_list += to_string(spec.schemes[i]);
  }
  result.metadata = {
      "# flexd-sweep schema_version=1",
      "# scenario=" + options.scenario_label,
      "# var=" + std::string(to_string(spec.variable)),
      "# grid=" + join_doubles(spec.grid),
      "# schemes=" + scheme_list,
      // Worker count is omitted: estimates are bit-identical regardless.
      "# seed=" + std::to_string(scenario.plan.seed) +
          " trials=" + std::to_string(scenario.plan.trials) +
          " M=" + std::to_string(scenario.series.truncation),
  };

  using clock = std::chrono::steady_clock;
  const auto elapsed_ms = [](clock::time_point start) {
    return std::chrono::duration<double, std::milli>(clock::now() - start).count();
  };

  if (spec.variable == SweepVariable::Zeta) {
    const auto slots = resolve_all(scenario);
    for (const Scheme scheme : spec.schemes) {
      const auto start = clock::now();
      const auto estimates = estimate_outage_curve(scenario, scheme, spec.grid, scenario.plan);
      const double scheme_ms = elapsed_ms(start);
      for (std::size_t i = 0; i < spec.grid.size(); ++i) {
        const double zeta = spec.grid[i];
        SweepRow row;
        row.value = zeta;
        row.scheme = scheme;
        row.closed_form = closed_outage(scenario, slots, scheme, zeta);
        row.mc_mean = estimates[i].mean;
        row.mc_stderr = estimates[i].std_error;
        row.region_label = region_label_for(slots.front(), scheme, zeta);
        row.runtime_ms = options.timings ? scheme_ms / static_cast<double>(spec.grid.size()) : 0.0;
        row.pass = compare(row.closed_form, estimates[i], 0.01, 3.0).pass;
        result.rows.push_back(std::move(row));
      }
    }
    // Rows come out in grid-major order regardless of evaluation order.
    std::stable_sort(result.rows.begin(), result.rows.end(),
                     [](const SweepRow& a, const SweepRow& b) { return a.value < b.value; });
    return result;
  }

  for (const double value : spec.grid) {
    Scenario point = scenario;
    int slot_filter = -1;
    if (spec.variable == SweepVariable::PowerDbw) {
      point = scenario.with_power_dbw(value);
    } else {
      if (value != std::floor(value) || value < 0.0 ||
          value >= scenario.timeline.horizon_slots) {
        throw ConfigError("sweep.grid", "slot values must be integers within the horizon");
      }
      slot_filter = static_cast<int>(value);
    }
    const auto slots = resolve_all(point);
    for (const Scheme scheme : spec.schemes) {
      const auto start = clock::now();
      SweepRow row;
      row.value = value;
      row.scheme = scheme;
      if (slot_filter >= 0) {
        const std::vector<ResolvedSlot> one = {slots[static_cast<std::size_t>(slot_filter)]};
        row.closed_form = closed_ee_bound(point, one, scheme);
        const Estimate est = estimate_ergodic_ee_at_slot(point, scheme, slot_filter, point.plan);
        row.mc_mean = est.mean;
        row.mc_stderr = est.std_error;
        row.pass = compare(row.closed_form, est, 1e-9 * (1.0 + std::abs(est.mean)), 3.0,
                           CompareMode::UpperBound)
                       .pass;
      } else {
        row.closed_form = closed_ee_bound(point, slots, scheme);
        const Estimate est = estimate_ergodic_ee(point, scheme, point.plan);
        row.mc_mean = est.mean;
        row.mc_stderr = est.std_error;
        row.pass = compare(row.closed_form, est, 1e-9 * (1.0 + std::abs(est.mean)), 3.0,
                           CompareMode::UpperBound)
                       .pass;
      }
      row.runtime_ms = options.timings ? elapsed_ms(start) : 0.0;
      result.rows.push_back(std::move(row));
    }
  }
  return result;
}

void write_csv(const SweepResult& result, std::ostream& out) {
  for (const std::string& line : result.metadata) out << line << '\n';
  out << "variable,scheme,closed_form,mc_mean,mc_stderr,region_label,runtime_ms,verdict\n";
  for (const SweepRow& row : result.rows) {
    out << format_double(row.value) << ',' << to_string(row.scheme) << ','
        << format_double(row.closed_form) << ',' << format_double(row.mc_mean) << ','
        << format_double(row.mc_stderr) << ',' << row.region_label << ','
        << format_double(row.runtime_ms) << ',' << (row.pass ? "pass" : "flag") << '\n';
  }
}

SweepResult run_sweep_to_file(const Scenario& scenario, const SweepSpec& spec,
                              const std::string& out_path, const SweepOptions& options) {
  SweepResult result = run_sweep(scenario, spec, options);
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw ConfigError(out_path, "cannot open output file for writing");
  write_csv(result, out);
  if (!out) throw ConfigError(out_path, "write failed");
  return result;
}

bool SelfcheckReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const CheckResult& c) { return c.pass; });
}

void print_report(const SelfcheckReport& report, std::ostream& out) {
  for (const CheckResult& c : report.checks) {
    out << (c.pass ? "[ok]   " : "[FAIL] ") << c.name;
    if (!c.detail.empty()) out << ": " << c.detail;
    out << '\n';
  }
  out << (report.all_pass() ? "selfcheck: all checks passed\n"
                            : "selfcheck: FAILURES detected\n");
}

namespace {

// Reference Q1 values computed by adaptive quadrature of the defining
// integral (with scaled-Bessel kernel), frozen at 15 significant digits.
struct MarcumRef {
  double a;
  double b;
  double q;
};
constexpr MarcumRef kMarcumRefs[] = {
    {1.0, 1.0, 0.732879803796820},
    {2.0, 1.0, 0.918107696369405},
    {1.0, 2.0, 0.269012060035910},
    {0.5, 3.0, 1.78436733864825e-02},
    {3.0, 0.5, 0.998300232705539},
    {5.0, 4.0, 0.867049795077925},
    {4.0, 5.0, 0.187404716718784},
    {8.0, 8.0, 0.524983026691178},
    {2.5, 7.0, 5.80861737286e-06},
    {10.0, 9.0, 0.853779005677028},
    {1.9349243818658786, 1.2403473458920847, 0.852517517850385},
};

Scenario builtin_scenario(std::uint64_t seed) {
  Scenario sc;
  sc.rf = {25.0e9, 500.0e6};
  sc.noise_power_w = dbm_to_watts(-115.0);
  sc.fading = {1.56, 1.3};
  sc.timeline = {1e-3, 1e-3, 1};
  sc.isl = {db_to_linear(38.5), db_to_linear(38.5), dbw_to_watts(10.0)};
  sc.downlink = {db_to_linear(35.0), db_to_linear(20.0), dbw_to_watts(10.0)};
  sc.reference_power_w = sc.isl.power_w;

  GeometryConfig geo;
  geo.links.push_back({NodeId{NodeKind::Satellite, 0}, NodeId{NodeKind::Satellite, 1},
                       LinkGeometry::Explicit{{800e3}}});
  geo.links.push_back({NodeId{NodeKind::Satellite, 0}, NodeId{NodeKind::Ground, 0},
                       LinkGeometry::Explicit{{1000e3}}});
  geo.links.push_back({NodeId{NodeKind::Satellite, 1}, NodeId{NodeKind::Ground, 1},
                       LinkGeometry::Explicit{{1100e3}}});
  sc.track = build_track(geo, sc.timeline);

  sc.interference[0] = {{db_to_linear(46.0), db_to_linear(40.0)}};
  sc.interference[1] = {{db_to_linear(48.0), db_to_linear(45.0), db_to_linear(41.0)}};
  sc.backlog_bits[0] = {2.2e6};
  sc.backlog_bits[1] = {3.0e6};
  sc.schemes = {Scheme::FlexD, Scheme::HdFixedK, Scheme::HdFixedL, Scheme::HdAlternating,
                Scheme::Fd};
  sc.plan = {100000, seed, 1};
  sc.rsi_power_w = dbm_to_watts(-120.0);
  sc.validate();
  return sc;
}

}  // namespace

SelfcheckReport selfcheck(const SelfcheckOptions& options) {
  SelfcheckReport report;
  const auto add = [&report](std::string name, bool pass, std::string detail = {}) {
    report.checks.push_back({std::move(name), pass, std::move(detail)});
  };

  {
    std::string failures;
    double worst = 0.0;
    for (const MarcumRef& ref : kMarcumRefs) {
      const double got = marcum_q1(ref.a, ref.b) + options.perturb_marcum;
      const double err = std::abs(got - ref.q);
      worst = std::max(worst, err);
      if (err > 1e-9) {
        failures += " (a=" + format_double(ref.a) + ",b=" + format_double(ref.b) +
                    ",err=" + format_double(err) + ")";
      }
    }
    add("marcum-q1-reference-grid", failures.empty(),
        failures.empty() ? "max abs err " + format_double(worst) : "failing points:" + failures);
  }

  {
    bool ok = true;
    std::string detail;
    for (double a = 0.0; a <= 12.0 && ok; a += 1.5) {
      if (std::abs(marcum_q1(a, 0.0) + options.perturb_marcum - 1.0) -
              std::abs(options.perturb_marcum) > 1e-14) {
        ok = false;
        detail = "Q1(a, 0) != 1 at a=" + format_double(a);
      }
    }
    for (double b = 0.0; b <= 12.0 && ok; b += 1.5) {
      const double expected = std::exp(-0.5 * b * b);
      if (std::abs(marcum_q1(0.0, b) - expected) > 1e-13) {
        ok = false;
        detail = "Q1(0, b) != exp(-b^2/2) at b=" + format_double(b);
      }
    }
    // Monotone: decreasing in b, increasing in a.
    for (double a = 0.0; a <= 10.0 && ok; a += 2.5) {
      double prev = 1.0;
      for (double b = 0.0; b <= 14.0; b += 0.7) {
        const double q = marcum_q1(a, b);
        if (q > prev + 1e-12) {
          ok = false;
          detail = "not decreasing in b at a=" + format_double(a);
          break;
        }
        prev = q;
      }
    }
    add("marcum-q1-identities", ok, detail);
  }

  {
    const RicianParams fading{1.56, 1.3};
    bool ok = rician_power_cdf(100.0, fading, 0.0) == 0.0;
    double prev = 0.0;
    for (double x = 0.0; x <= 2000.0; x += 25.0) {
      const double f = rician_power_cdf(100.0, fading, x);
      if (f < prev - 1e-12 || f < 0.0 || f > 1.0) ok = false;
      prev = f;
    }
    if (rician_power_cdf(100.0, fading, 1e8) < 1.0 - 1e-8) ok = false;
    add("rician-cdf-shape", ok);
  }

  {
    bool ok = true;
    std::string detail;
    for (double a = 0.25; a <= 4.0 && ok; a *= 2.0) {
      for (double s = 0.5; s <= 8.0; s *= 2.0) {
        const double direct = (1.0 - std::exp(-a * s)) / a;
        if (std::abs(phi(0, a, s) - direct) > 1e-12 * (1.0 + direct)) {
          ok = false;
          detail = "phi_0 closed form mismatch at A=" + format_double(a);
          break;
        }
        const double pair = (1.0 - std::exp(-2.0 * a * s)) / (2.0 * a);
        if (std::abs(psi(0, 0, a, a, s) - pair) > 1e-12 * (1.0 + pair)) {
          ok = false;
          detail = "psi_00 closed form mismatch at A=" + format_double(a);
          break;
        }
      }
    }
    add("phi-psi-closed-forms", ok, detail);
  }

  {
    bool ok = true;
    std::string detail;
    const double w = 500e6;
    const double slot = 1e-3;
    for (const double q : {0.0, 1e3, 5e5, 2e6, 1e7}) {
      const double gamma_q = backlog_equivalent_sinr(q, w, slot);
      const double back = w * slot * std::log2(1.0 + gamma_q);
      if (std::abs(back - q) > 1e-9 * std::max(1.0, q)) {
        ok = false;
        detail = "inverse mismatch at Q=" + format_double(q);
        break;
      }
    }
    add("backlog-sinr-inverse", ok, detail);
  }

  const Scenario sc = builtin_scenario(options.seed);
  const ResolvedSlot rs = sc.resolve_slot(0);

  {
    // Closed-form outage vs simulation across all regions.
    const double omega_max = std::max(rs.outage.omega_k, rs.outage.omega_l);
    std::vector<double> grid;
    for (int i = 0; i < 25; ++i) {
      grid.push_back(omega_max * 1.25 * (i + 0.5) / 25.0);
    }
    const auto est = estimate_outage_curve(sc, Scheme::FlexD, grid, sc.plan);
    double sup = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      sup = std::max(sup, std::abs(outage_probability(grid[i], rs.outage) - est[i].mean));
    }
    add("outage-cross-validation", sup <= 0.01, "sup gap " + format_double(sup));
  }

  {
    bool ok = true;
    std::string detail;
    for (const Scheme scheme : sc.schemes) {
      const Estimate est = estimate_ergodic_ee(sc, scheme, sc.plan);
      const std::vector<ResolvedSlot> one = {rs};
      const double bound = closed_ee_bound(sc, one, scheme);
      if (!compare(bound, est, 1e-9 * (1.0 + std::abs(est.mean)), 3.0,
                   CompareMode::UpperBound)
               .pass) {
        ok = false;
        detail = std::string("bound violated for ") + to_string(scheme);
        break;
      }
    }
    add("jensen-ee-dominance", ok, detail);
  }

  {
    std::uint64_t violations = 0;
    for (std::uint64_t i = 0; i < 10000; ++i) {
      Rng rng = Rng::for_stream(options.seed, i);
      SlotInputs in = rs.inputs;
      in.fading_gain_k = sample_rician_power(sc.fading, rng);
      in.fading_gain_l = sample_rician_power(sc.fading, rng);
      const double flexd = evaluate_flexd(in).achieved_rate;
      for (const HdPolicy policy :
           {HdPolicy::FixedK, HdPolicy::FixedL, HdPolicy::Alternating}) {
        if (evaluate_hd(in, policy).achieved_rate > flexd) ++violations;
      }
    }
    add("flexd-per-slot-dominance", violations == 0,
        violations == 0 ? "" : std::to_string(violations) + " violations");
  }

  {
    const Estimate first = estimate_outage(sc, 1.0, sc.plan);
    const Estimate second = estimate_outage(sc, 1.0, sc.plan);
    add("deterministic-replay", first.mean == second.mean && first.std_error == second.std_error);
  }

  return report;
}

}  // namespace flexd
