#pragma once

#include <array>
#include <string>
#include <vector>

#include "flexd/analytics.hpp"
#include "flexd/geometry.hpp"
#include "flexd/linkbudget.hpp"
#include "flexd/montecarlo.hpp"
#include "flexd/scheduler.hpp"

namespace flexd {

// A directed link class budget as configured (shared by both directions of
// the class; per-node asymmetry enters through geometry and interference).
struct LinkClass {
  double tx_gain = 1.0;   // linear
  double rx_gain = 1.0;   // linear
  double power_w = 1.0;   // transmit power
};

// Everything one slot pins down before fading is drawn.
struct ResolvedSlot {
  SlotInputs inputs;      // fading gains left at 1; filled per draw
  OutageInputs outage;    // cut levels + downlink means + fading params
};

// A fully resolved experiment description. All quantities linear; dB forms
// exist only in the file. Immutable in use; copy + modify for sweeps.
struct Scenario {
  int schema_version = 1;
  RfConstants rf;
  double noise_power_w = 1e-15;
  RicianParams fading;
  Timeline timeline;
  std::array<std::string, 2> satellite_names = {"S0", "S1"};
  std::array<std::string, 2> ground_names = {"U0", "U1"};

  LinkClass isl;
  LinkClass downlink;
  GeometryTrack track;

  // Interferer average SNRs observed by each satellite, per slot (inner index
  // slot; size 1 means constant over the horizon). Values are linear and
  // refer to `reference_power_w`; they scale with the ISL power under sweeps
  // (interferers are co-channel satellites transmitting at the same power).
  std::array<std::vector<InterferenceProfile>, 2> interference;
  double reference_power_w = 1.0;

  // Backlog bits destined to each ground user, per slot (size 1 = constant).
  std::array<std::vector<double>, 2> backlog_bits;

  std::vector<Scheme> schemes;
  SeriesControls series;
  TrialPlan plan;
  double rsi_power_w = 0.0;

  ResolvedSlot resolve_slot(int slot) const;

  // Per-scheme power budget: P for FlexD/HD, 2P for FD, with P the ISL
  // transmit power.
  double scheme_power_w(Scheme scheme) const;

  // Copy with both link powers set to `power_dbw` and interference rescaled
  // accordingly.
  Scenario with_power_dbw(double power_dbw) const;

  void validate() const;
};

// Parses and validates a scenario file (strict: unknown keys are rejected,
// invariant violations name the field). Defaults: series.M = 20,
// montecarlo = {1e6 trials, seed 1, 1 worker}, rsi -120 dBm, all schemes.
Scenario load_scenario(const std::string& path);
Scenario parse_scenario(const std::string& text, const std::string& origin = "<string>");

Scheme scheme_from_string(const std::string& name);

}  // namespace flexd
