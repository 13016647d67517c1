#include "flexd/geometry.hpp"

#include <cmath>

#include "flexd/errors.hpp"
#include "flexd/units.hpp"

namespace flexd {

std::string to_string(const NodeId& id) {
  return (id.kind == NodeKind::Satellite ? "S" : "U") + std::to_string(id.index);
}

void Timeline::validate() const {
  if (slot_s <= 0.0) throw ConfigError("timeline.slot_s", "must be > 0");
  if (coverage_s < slot_s) throw ConfigError("timeline.coverage_s", "must be >= slot_s");
  if (horizon_slots < 1) throw ConfigError("timeline.horizon_slots", "must be >= 1");
}

std::int64_t Timeline::slots_per_window() const {
  const auto n = std::llround(coverage_s / slot_s);
  return n > 0 ? n : 1;
}

HandoverState handover_map(const Timeline& timeline, int slot) {
  timeline.validate();
  if (slot < 0 || slot >= timeline.horizon_slots) {
    throw std::out_of_range("handover_map: slot " + std::to_string(slot) +
                            " outside horizon of " + std::to_string(timeline.horizon_slots));
  }
  const std::int64_t window = slot / timeline.slots_per_window();
  HandoverState state;
  if (window % 2 == 1) {
    state.serving_satellite_of_region[0] = 1;
    state.serving_satellite_of_region[1] = 0;
  }
  return state;
}

GeometryTrack::Key GeometryTrack::make_key(NodeId a, NodeId b, int slot) {
  if (b < a) std::swap(a, b);  // unordered pair
  return {a, b, slot};
}

void GeometryTrack::set_distance(NodeId a, NodeId b, int slot, double meters) {
  if (meters <= 0.0) {
    throw ConfigError("geometry " + to_string(a) + "-" + to_string(b) +
                          " slot " + std::to_string(slot),
                      "distance must be > 0");
  }
  distances_[make_key(a, b, slot)] = meters;
}

double GeometryTrack::distance(NodeId a, NodeId b, int slot) const {
  const auto it = distances_.find(make_key(a, b, slot));
  if (it == distances_.end()) {
    throw ConfigError("geometry " + to_string(a) + "-" + to_string(b) +
                          " slot " + std::to_string(slot),
                      "no distance configured");
  }
  return it->second;
}

bool GeometryTrack::has(NodeId a, NodeId b, int slot) const {
  return distances_.find(make_key(a, b, slot)) != distances_.end();
}

double circular_orbit_chord_m(double altitude_m, double separation_rad) {
  if (altitude_m <= 0.0) throw ConfigError("geometry.altitude", "must be > 0");
  if (separation_rad <= 0.0 || separation_rad > 3.14159265358979323846) {
    throw ConfigError("geometry.angular_separation", "must be in (0, pi]");
  }
  return 2.0 * (kEarthRadiusM + altitude_m) * std::sin(0.5 * separation_rad);
}

double slant_range_m(double altitude_m, double elevation_rad) {
  if (altitude_m <= 0.0) throw ConfigError("geometry.altitude", "must be > 0");
  if (elevation_rad < 0.0 || elevation_rad > 1.5707963267948967) {
    throw ConfigError("geometry.elevation", "must be in [0, pi/2]");
  }
  const double r = kEarthRadiusM + altitude_m;
  const double sin_e = std::sin(elevation_rad);
  return std::sqrt(r * r - kEarthRadiusM * kEarthRadiusM * (1.0 - sin_e * sin_e)) -
         kEarthRadiusM * sin_e;
}

GeometryTrack build_track(const GeometryConfig& config, const Timeline& timeline) {
  timeline.validate();
  GeometryTrack track;
  for (const auto& link : config.links) {
    const std::string name = to_string(link.a) + "-" + to_string(link.b);
    for (int t = 0; t < timeline.horizon_slots; ++t) {
      double d = 0.0;
      if (const auto* ex = std::get_if<LinkGeometry::Explicit>(&link.shape)) {
        if (ex->distance_m_per_slot.empty()) {
          throw ConfigError("geometry " + name, "empty distance list");
        }
        if (ex->distance_m_per_slot.size() == 1) {
          d = ex->distance_m_per_slot.front();
        } else if (static_cast<std::size_t>(t) < ex->distance_m_per_slot.size()) {
          d = ex->distance_m_per_slot[static_cast<std::size_t>(t)];
        } else {
          throw ConfigError("geometry " + name + " slot " + std::to_string(t),
                            "per-slot distance list shorter than horizon");
        }
      } else if (const auto* ch = std::get_if<LinkGeometry::CircularOrbitChord>(&link.shape)) {
        d = circular_orbit_chord_m(ch->altitude_m, ch->separation_rad);
      } else {
        const auto& sl = std::get<LinkGeometry::SlantRange>(link.shape);
        d = slant_range_m(sl.altitude_m, sl.elevation_rad);
      }
      track.set_distance(link.a, link.b, t, d);
    }
  }
  return track;
}

}  // namespace flexd
