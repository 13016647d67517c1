#include "flexd/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "flexd/errors.hpp"
#include "flexd/units.hpp"

namespace flexd {

namespace {

using nlohmann::json;

constexpr double kDegToRad = 0.017453292519943295;

NodeId sat(int index) { return NodeId{NodeKind::Satellite, index}; }
NodeId gnd(int index) { return NodeId{NodeKind::Ground, index}; }

const json& require_section(const json& parent, const std::string& path, const char* key) {
  const auto it = parent.find(key);
  if (it == parent.end()) throw ConfigError(path + "." + key, "required section missing");
  return *it;
}

void check_keys(const json& obj, const std::string& path,
                std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) throw ConfigError(path, "expected an object");
  for (const auto& item : obj.items()) {
    if (std::find_if(allowed.begin(), allowed.end(), [&](const char* k) {
          return item.key() == k;
        }) == allowed.end()) {
      throw ConfigError(path + "." + item.key(), "unknown key");
    }
  }
}

double get_number(const json& obj, const std::string& path, const char* key) {
  const auto it = obj.find(key);
  if (it == obj.end()) throw ConfigError(path + "." + key, "required field missing");
  if (!it->is_number()) throw ConfigError(path + "." + key, "expected a number");
  return it->get<double>();
}

double get_positive(const json& obj, const std::string& path, const char* key) {
  const double v = get_number(obj, path, key);
  if (!(v > 0.0)) throw ConfigError(path + "." + key, "must be > 0");
  return v;
}

std::vector<double> get_number_list(const json& node, const std::string& path) {
  if (!node.is_array()) throw ConfigError(path, "expected an array of numbers");
  std::vector<double> out;
  out.reserve(node.size());
  for (const auto& v : node) {
    if (!v.is_number()) throw ConfigError(path, "expected an array of numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

LinkClass parse_link(const json& node, const std::string& path) {
  check_keys(node, path, {"tx_gain_dbi", "rx_gain_dbi", "power_dbw"});
  LinkClass link;
  link.tx_gain = db_to_linear(get_number(node, path, "tx_gain_dbi"));
  link.rx_gain = db_to_linear(get_number(node, path, "rx_gain_dbi"));
  link.power_w = dbw_to_watts(get_number(node, path, "power_dbw"));
  return link;
}

LinkGeometry parse_geometry(const json& node, const std::string& path, NodeId a, NodeId b) {
  check_keys(node, path,
             {"distance_km", "distance_km_per_slot", "altitude_km", "angular_separation_deg",
              "elevation_deg"});
  LinkGeometry geom;
  geom.a = a;
  geom.b = b;
  if (node.contains("distance_km")) {
    geom.shape = LinkGeometry::Explicit{{get_positive(node, path, "distance_km") * 1e3}};
  } else if (node.contains("distance_km_per_slot")) {
    auto km = get_number_list(node.at("distance_km_per_slot"), path + ".distance_km_per_slot");
    if (km.empty()) throw ConfigError(path + ".distance_km_per_slot", "must not be empty");
    for (auto& d : km) d *= 1e3;
    geom.shape = LinkGeometry::Explicit{std::move(km)};
  } else if (node.contains("angular_separation_deg")) {
    geom.shape = LinkGeometry::CircularOrbitChord{
        get_positive(node, path, "altitude_km") * 1e3,
        get_number(node, path, "angular_separation_deg") * kDegToRad};
  } else if (node.contains("elevation_deg")) {
    geom.shape = LinkGeometry::SlantRange{get_positive(node, path, "altitude_km") * 1e3,
                                          get_number(node, path, "elevation_deg") * kDegToRad};
  } else {
    throw ConfigError(path, "expected distance_km, distance_km_per_slot, "
                            "altitude_km + angular_separation_deg, or altitude_km + elevation_deg");
  }
  return geom;
}

std::vector<InterferenceProfile> parse_interference(const json& node, const std::string& path,
                                                    int horizon) {
  check_keys(node, path, {"mean_snr_db", "mean_snr_db_per_slot", "count", "range_db"});
  std::vector<InterferenceProfile> per_slot;
  if (node.contains("mean_snr_db")) {
    InterferenceProfile profile;
    for (const double db : get_number_list(node.at("mean_snr_db"), path + ".mean_snr_db")) {
      profile.push_back(db_to_linear(db));
    }
    per_slot.push_back(std::move(profile));
  } else if (node.contains("mean_snr_db_per_slot")) {
    const auto& arr = node.at("mean_snr_db_per_slot");
    if (!arr.is_array() || arr.size() != static_cast<std::size_t>(horizon)) {
      throw ConfigError(path + ".mean_snr_db_per_slot",
                        "must list one entry per slot (" + std::to_string(horizon) + ")");
    }
    for (const auto& entry : arr) {
      InterferenceProfile profile;
      for (const double db : get_number_list(entry, path + ".mean_snr_db_per_slot[]")) {
        profile.push_back(db_to_linear(db));
      }
      per_slot.push_back(std::move(profile));
    }
  } else if (node.contains("count")) {
    const double count_raw = get_number(node, path, "count");
    const int count = static_cast<int>(count_raw);
    if (count < 0 || count != count_raw) throw ConfigError(path + ".count", "must be an integer >= 0");
    const auto range = get_number_list(require_section(node, path, "range_db"), path + ".range_db");
    if (range.size() != 2 || range[0] > range[1]) {
      throw ConfigError(path + ".range_db", "expected [lo_db, hi_db] with lo <= hi");
    }
    // Deterministic generation rule: a uniform dB grid across the range.
    InterferenceProfile profile;
    for (int i = 0; i < count; ++i) {
      const double frac = count > 1 ? static_cast<double>(i) / (count - 1) : 0.5;
      profile.push_back(db_to_linear(range[0] + (range[1] - range[0]) * frac));
    }
    per_slot.push_back(std::move(profile));
  } else {
    throw ConfigError(path, "expected mean_snr_db, mean_snr_db_per_slot, or count + range_db");
  }
  return per_slot;
}

std::vector<double> parse_backlog(const json& node, const std::string& path, const char* scalar_key,
                                  const char* array_key, int horizon) {
  if (node.contains(scalar_key)) {
    const double q = get_number(node, path, scalar_key);
    if (q < 0.0) throw ConfigError(path + "." + scalar_key, "must be >= 0");
    return {q};
  }
  if (node.contains(array_key)) {
    auto q = get_number_list(node.at(array_key), path + "." + array_key);
    if (q.size() != static_cast<std::size_t>(horizon)) {
      throw ConfigError(path + "." + array_key,
                        "must list one entry per slot (" + std::to_string(horizon) + ")");
    }
    for (const double v : q) {
      if (v < 0.0) throw ConfigError(path + "." + array_key, "entries must be >= 0");
    }
    return q;
  }
  throw ConfigError(path + "." + scalar_key, "required field missing");
}

template <typename T>
const T& at_slot(const std::vector<T>& values, int slot) {
  return values.size() == 1 ? values.front() : values[static_cast<std::size_t>(slot)];
}

}  // namespace

Scheme scheme_from_string(const std::string& name) {
  if (name == "flexd") return Scheme::FlexD;
  if (name == "hd-fixed-k") return Scheme::HdFixedK;
  if (name == "hd-fixed-l") return Scheme::HdFixedL;
  if (name == "hd-alt" || name == "hd-alternating") return Scheme::HdAlternating;
  if (name == "fd") return Scheme::Fd;
  throw ConfigError("scheme '" + name + "'",
                    "expected one of flexd, hd-fixed-k, hd-fixed-l, hd-alt, fd");
}

void Scenario::validate() const {
  if (rf.frequency_hz <= 0.0) throw ConfigError("rf.frequency_hz", "must be > 0");
  if (rf.bandwidth_hz <= 0.0) throw ConfigError("rf.bandwidth_hz", "must be > 0");
  if (noise_power_w <= 0.0) throw ConfigError("rf.noise_dbm", "noise power must be > 0");
  if (fading.mu_abs < 0.0) throw ConfigError("fading.mu_abs", "must be >= 0");
  if (fading.sigma_g_sq <= 0.0) throw ConfigError("fading.sigma_g_sq", "must be > 0");
  timeline.validate();
  if (schemes.empty()) throw ConfigError("schemes", "must not be empty");
  if (series.truncation < 1) throw ConfigError("series.M", "must be >= 1");
  if (plan.trials < 1) throw ConfigError("montecarlo.trials", "must be >= 1");
  if (plan.workers < 1) throw ConfigError("montecarlo.workers", "must be >= 1");
  if (rsi_power_w < 0.0) throw ConfigError("fd.rsi_dbm", "RSI power must be >= 0");
}

ResolvedSlot Scenario::resolve_slot(int slot) const {
  const HandoverState handover = handover_map(timeline, slot);
  const double power_scale = isl.power_w / reference_power_w;

  ResolvedSlot out;
  out.inputs.slot = slot;
  out.inputs.bandwidth_hz = rf.bandwidth_hz;
  out.inputs.slot_s = timeline.slot_s;
  out.inputs.power_w = isl.power_w;

  for (int flow = 0; flow < 2; ++flow) {
    const int relay = handover.serving_satellite_of_region[flow];
    const int source = 1 - relay;

    const LinkBudget isl_budget{isl.tx_gain, isl.rx_gain, isl.power_w, noise_power_w};
    const double d_isl = track.distance(sat(source), sat(relay), slot);
    const double isl_mean = average_snr(isl_budget, path_gain(isl_budget, rf, d_isl));

    InterferenceProfile profile = at_slot(interference[static_cast<std::size_t>(relay)], slot);
    for (double& g : profile) g *= power_scale;

    const LinkBudget dl_budget{downlink.tx_gain, downlink.rx_gain, downlink.power_w,
                               noise_power_w};
    const double d_dl = track.distance(sat(relay), gnd(flow), slot);
    const double dl_mean = average_snr(dl_budget, path_gain(dl_budget, rf, d_dl));

    const double q_bits = at_slot(backlog_bits[static_cast<std::size_t>(flow)], slot);
    const DirectionState state = make_direction_state(
        isl_sinr(isl_mean, profile), dl_mean, q_bits, rf.bandwidth_hz, timeline.slot_s);
    const double fd_sinr = fd_isl_sinr(isl_mean, profile, rsi_power_w, noise_power_w);

    if (flow == 0) {
      out.inputs.flow_k = state;
      out.inputs.fd_isl_sinr_k = fd_sinr;
      out.outage.omega_k = state.cut_level;
      out.outage.dl_mean_k = dl_mean;
    } else {
      out.inputs.flow_l = state;
      out.inputs.fd_isl_sinr_l = fd_sinr;
      out.outage.omega_l = state.cut_level;
      out.outage.dl_mean_l = dl_mean;
    }
  }
  out.outage.fading = fading;
  return out;
}

double Scenario::scheme_power_w(Scheme scheme) const {
  return scheme == Scheme::Fd ? 2.0 * isl.power_w : isl.power_w;
}

Scenario Scenario::with_power_dbw(double power_dbw) const {
  Scenario copy = *this;
  const double p = dbw_to_watts(power_dbw);
  copy.isl.power_w = p;
  copy.downlink.power_w = p;
  return copy;  // interference rescales through reference_power_w
}

Scenario parse_scenario(const std::string& text, const std::string& origin) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(origin, std::string("parse error: ") + e.what());
  }
  check_keys(root, origin,
             {"schema_version", "rf", "fading", "nodes", "links", "geometry", "interference",
              "backlogs", "timeline", "schemes", "series", "montecarlo", "fd"});

  Scenario sc;
  if (root.contains("schema_version")) {
    if (!root["schema_version"].is_number_integer() || root["schema_version"].get<int>() != 1) {
      throw ConfigError(origin + ".schema_version", "unsupported version (expected 1)");
    }
  }

  const json& rf = require_section(root, origin, "rf");
  check_keys(rf, origin + ".rf", {"frequency_hz", "bandwidth_hz", "noise_dbm"});
  sc.rf.frequency_hz = get_positive(rf, origin + ".rf", "frequency_hz");
  sc.rf.bandwidth_hz = get_positive(rf, origin + ".rf", "bandwidth_hz");
  sc.noise_power_w = dbm_to_watts(get_number(rf, origin + ".rf", "noise_dbm"));

  const json& fading = require_section(root, origin, "fading");
  check_keys(fading, origin + ".fading", {"mu_abs", "sigma_g_sq"});
  sc.fading.mu_abs = get_number(fading, origin + ".fading", "mu_abs");
  sc.fading.sigma_g_sq = get_positive(fading, origin + ".fading", "sigma_g_sq");

  if (root.contains("nodes")) {
    const json& nodes = root["nodes"];
    check_keys(nodes, origin + ".nodes", {"satellites", "ground_users"});
    for (const auto& [key, names] :
         {std::pair{"satellites", &sc.satellite_names}, {"ground_users", &sc.ground_names}}) {
      if (!nodes.contains(key)) continue;
      const auto& arr = nodes.at(key);
      if (!arr.is_array() || arr.size() != 2 || !arr[0].is_string() || !arr[1].is_string()) {
        throw ConfigError(origin + ".nodes." + key, "expected exactly two names");
      }
      (*names)[0] = arr[0].get<std::string>();
      (*names)[1] = arr[1].get<std::string>();
    }
  }

  const json& timeline = require_section(root, origin, "timeline");
  check_keys(timeline, origin + ".timeline", {"slot_s", "coverage_s", "horizon_slots"});
  sc.timeline.slot_s = get_positive(timeline, origin + ".timeline", "slot_s");
  sc.timeline.coverage_s = get_positive(timeline, origin + ".timeline", "coverage_s");
  const double horizon = get_number(timeline, origin + ".timeline", "horizon_slots");
  if (horizon < 1 || horizon != std::floor(horizon)) {
    throw ConfigError(origin + ".timeline.horizon_slots", "must be an integer >= 1");
  }
  sc.timeline.horizon_slots = static_cast<int>(horizon);
  sc.timeline.validate();

  const json& links = require_section(root, origin, "links");
  check_keys(links, origin + ".links", {"isl", "downlink"});
  sc.isl = parse_link(require_section(links, origin + ".links", "isl"), origin + ".links.isl");
  sc.downlink = parse_link(require_section(links, origin + ".links", "downlink"),
                           origin + ".links.downlink");
  sc.reference_power_w = sc.isl.power_w;

  const json& geometry = require_section(root, origin, "geometry");
  check_keys(geometry, origin + ".geometry", {"isl", "downlink_to_U_k", "downlink_to_U_l"});
  GeometryConfig geo;
  geo.links.push_back(parse_geometry(require_section(geometry, origin + ".geometry", "isl"),
                                     origin + ".geometry.isl", sat(0), sat(1)));
  // Downlink geometry describes the serving-satellite-to-user link; realize it
  // against whichever satellite the handover map puts in charge each slot.
  const LinkGeometry dl_k = parse_geometry(
      require_section(geometry, origin + ".geometry", "downlink_to_U_k"),
      origin + ".geometry.downlink_to_U_k", sat(0), gnd(0));
  const LinkGeometry dl_l = parse_geometry(
      require_section(geometry, origin + ".geometry", "downlink_to_U_l"),
      origin + ".geometry.downlink_to_U_l", sat(0), gnd(1));
  sc.track = build_track(geo, sc.timeline);
  {
    for (int flow = 0; flow < 2; ++flow) {
      const LinkGeometry& base = flow == 0 ? dl_k : dl_l;
      for (int t = 0; t < sc.timeline.horizon_slots; ++t) {
        const int relay = handover_map(sc.timeline, t).serving_satellite_of_region[flow];
        LinkGeometry per_slot = base;
        per_slot.a = sat(relay);
        per_slot.b = gnd(flow);
        Timeline one{sc.timeline.slot_s, sc.timeline.coverage_s, 1};
        // Resolve this slot's distance through a single-slot track.
        if (const auto* ex = std::get_if<LinkGeometry::Explicit>(&per_slot.shape);
            ex && ex->distance_m_per_slot.size() > 1) {
          if (static_cast<std::size_t>(t) >= ex->distance_m_per_slot.size()) {
            throw ConfigError(origin + ".geometry downlink slot " + std::to_string(t),
                              "per-slot distance list shorter than horizon");
          }
          per_slot.shape =
              LinkGeometry::Explicit{{ex->distance_m_per_slot[static_cast<std::size_t>(t)]}};
        }
        GeometryConfig single{{per_slot}};
        const GeometryTrack resolved = build_track(single, one);
        sc.track.set_distance(sat(relay), gnd(flow), t,
                              resolved.distance(sat(relay), gnd(flow), 0));
      }
    }
  }

  if (root.contains("interference")) {
    const json& interf = root["interference"];
    check_keys(interf, origin + ".interference", {"at_S_k", "at_S_l"});
    if (interf.contains("at_S_k")) {
      sc.interference[0] = parse_interference(interf["at_S_k"], origin + ".interference.at_S_k",
                                              sc.timeline.horizon_slots);
    }
    if (interf.contains("at_S_l")) {
      sc.interference[1] = parse_interference(interf["at_S_l"], origin + ".interference.at_S_l",
                                              sc.timeline.horizon_slots);
    }
  }
  for (auto& per_sat : sc.interference) {
    if (per_sat.empty()) per_sat.push_back({});  // noise-limited default
  }

  const json& backlogs = require_section(root, origin, "backlogs");
  check_keys(backlogs, origin + ".backlogs",
             {"to_U_k_bits", "to_U_k_bits_per_slot", "to_U_l_bits", "to_U_l_bits_per_slot"});
  sc.backlog_bits[0] = parse_backlog(backlogs, origin + ".backlogs", "to_U_k_bits",
                                     "to_U_k_bits_per_slot", sc.timeline.horizon_slots);
  sc.backlog_bits[1] = parse_backlog(backlogs, origin + ".backlogs", "to_U_l_bits",
                                     "to_U_l_bits_per_slot", sc.timeline.horizon_slots);

  if (root.contains("schemes")) {
    const auto& arr = root["schemes"];
    if (!arr.is_array() || arr.empty()) throw ConfigError(origin + ".schemes", "expected a non-empty array");
    for (const auto& name : arr) {
      if (!name.is_string()) throw ConfigError(origin + ".schemes", "expected scheme names");
      sc.schemes.push_back(scheme_from_string(name.get<std::string>()));
    }
  } else {
    sc.schemes = {Scheme::FlexD, Scheme::HdFixedK, Scheme::HdFixedL, Scheme::HdAlternating,
                  Scheme::Fd};
  }

  if (root.contains("series")) {
    const json& series = root["series"];
    check_keys(series, origin + ".series", {"M", "term_tolerance"});
    if (series.contains("M")) {
      const double m = get_number(series, origin + ".series", "M");
      if (m < 1 || m != std::floor(m)) throw ConfigError(origin + ".series.M", "must be an integer >= 1");
      sc.series.truncation = static_cast<int>(m);
    }
    if (series.contains("term_tolerance")) {
      sc.series.term_tolerance = get_positive(series, origin + ".series", "term_tolerance");
    }
  }

  if (root.contains("montecarlo")) {
    const json& mc = root["montecarlo"];
    check_keys(mc, origin + ".montecarlo", {"trials", "seed", "workers"});
    if (mc.contains("trials")) {
      const double trials = get_number(mc, origin + ".montecarlo", "trials");
      if (trials < 1) throw ConfigError(origin + ".montecarlo.trials", "must be >= 1");
      sc.plan.trials = static_cast<std::uint64_t>(trials);
    }
    if (mc.contains("seed")) {
      if (!mc["seed"].is_number()) throw ConfigError(origin + ".montecarlo.seed", "expected a number");
      sc.plan.seed = mc["seed"].get<std::uint64_t>();
    }
    if (mc.contains("workers")) {
      const double workers = get_number(mc, origin + ".montecarlo", "workers");
      if (workers < 1) throw ConfigError(origin + ".montecarlo.workers", "must be >= 1");
      sc.plan.workers = static_cast<unsigned>(workers);
    }
  }

  sc.rsi_power_w = dbm_to_watts(-120.0);
  if (root.contains("fd")) {
    const json& fd = root["fd"];
    check_keys(fd, origin + ".fd", {"rsi_dbm"});
    if (fd.contains("rsi_dbm")) {
      sc.rsi_power_w = dbm_to_watts(get_number(fd, origin + ".fd", "rsi_dbm"));
    }
  }

  sc.validate();
  // Resolving every slot now surfaces missing geometry/interference early.
  for (int t = 0; t < sc.timeline.horizon_slots; ++t) (void)sc.resolve_slot(t);
  return sc;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path, "cannot open scenario file");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_scenario(buffer.str(), path);
}

}  // namespace flexd
