#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <variant>
#include <vector>

namespace flexd {

enum class NodeKind { Satellite, Ground };

struct NodeId {
  NodeKind kind = NodeKind::Satellite;
  int index = 0;

  friend auto operator<=>(const NodeId&, const NodeId&) = default;
};

std::string to_string(const NodeId& id);

// Slot structure of a run. Slots are quasi-static: geometry, interference and
// backlogs take one value per slot. coverage_s is rounded to a whole number
// of slots for handover bookkeeping.
struct Timeline {
  double slot_s = 1e-3;       // > 0
  double coverage_s = 1e-3;   // >= slot_s
  int horizon_slots = 1;      // >= 1

  void validate() const;
  std::int64_t slots_per_window() const;
};

// Which satellite serves each region in a given slot. Regions and satellites
// are indexed 0 (k) and 1 (l); the association swaps every coverage window.
struct HandoverState {
  int serving_satellite_of_region[2] = {0, 1};
};

HandoverState handover_map(const Timeline& timeline, int slot);

// Per-slot inter-node distances, symmetric in the node pair. Immutable after
// construction; concurrent reads are safe.
class GeometryTrack {
 public:
  void set_distance(NodeId a, NodeId b, int slot, double meters);
  double distance(NodeId a, NodeId b, int slot) const;  // throws ConfigError if absent
  bool has(NodeId a, NodeId b, int slot) const;

 private:
  using Key = std::tuple<NodeId, NodeId, int>;
  static Key make_key(NodeId a, NodeId b, int slot);
  std::map<Key, double> distances_;
};

// Declarative geometry for one link over the horizon.
struct LinkGeometry {
  NodeId a;
  NodeId b;

  struct Explicit {
    std::vector<double> distance_m_per_slot;  // size 1 = constant over horizon
  };
  struct CircularOrbitChord {
    double altitude_m = 0.0;        // > 0
    double separation_rad = 0.0;    // in (0, pi]
  };
  struct SlantRange {
    double altitude_m = 0.0;        // > 0
    double elevation_rad = 1.5707963267948966;  // ground-terminal elevation
  };
  std::variant<Explicit, CircularOrbitChord, SlantRange> shape;
};

struct GeometryConfig {
  std::vector<LinkGeometry> links;
};

// Distance between two co-orbital satellites separated by `separation_rad`
// of arc on a circular orbit at `altitude_m`: chord of radius R_E + h.
double circular_orbit_chord_m(double altitude_m, double separation_rad);

// Satellite-to-ground slant range for a terminal seeing the satellite at
// elevation angle `elevation_rad`; pi/2 degenerates to the altitude.
double slant_range_m(double altitude_m, double elevation_rad);

// Realizes the configured links into a complete track over the horizon.
// Throws ConfigError naming the pair and slot on any missing or non-positive
// entry.
GeometryTrack build_track(const GeometryConfig& config, const Timeline& timeline);

}  // namespace flexd
