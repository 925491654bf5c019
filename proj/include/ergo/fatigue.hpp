// Copyright 2026 The ergofatigue Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Joint-level fatigue and recovery of muscle capacity.
//
// A joint rested at its maximum strength Gamma_max loses capacity while it
// holds a torque Gamma:
//
//   d Gamma_cem / dt = -k * Gamma * Gamma_cem / Gamma_max        (work)
//   d Gamma_cem / dt =  R * (Gamma_max - Gamma_cem)              (rest)
//
// Every quantity here uses minutes for time (k and R are per minute) and
// N*m for torques. Conversions to seconds happen at the I/O boundary.

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "ergo/common.hpp"

namespace ergo {

template <typename Scalar = double>
struct FatigueParams {
  Scalar fatigue_rate{1};     // k [1/min]
  Scalar recovery_rate{2.4};  // R [1/min]
};

/// Which accumulation law the fatigue index follows.
///
/// `TableConsistent` integrates dU/dt = k * Gamma / Gamma_max. `Literal`
/// integrates dU/dt = Gamma_max * Gamma / Gamma_cem(t)^2, which grows
/// exponentially under constant load and does not reproduce the reference
/// drilling indices; it is kept for comparison only.
enum class IndexForm { TableConsistent, Literal };

enum class LimitStatus {
  Finite,          // capacity reaches the load after a finite time
  Overexertion,    // load already exceeds the available strength
  NoFatigueLimit,  // zero load, capacity never decays
};

std::string_view to_string(LimitStatus status);
std::string_view to_string(IndexForm form);
IndexForm parse_index_form(std::string_view text);

template <typename Scalar>
struct EnduranceTime {
  Scalar minutes;
  LimitStatus status;
};

enum class RecoveryStatus { Reached, AlreadyRecovered, Unreachable };

template <typename Scalar>
struct RecoveryTime {
  Scalar minutes;
  RecoveryStatus status;
};

struct HoleCount {
  std::int64_t holes;
  LimitStatus status;
};

template <typename Scalar = double>
struct JointCapacity {
  Scalar gamma_max;
  Scalar gamma_cem;
  Scalar fatigue_index{0};
};

/// One work/rest unit of a repetitive task. Durations are in minutes.
template <typename Scalar = double>
struct TaskCycle {
  Scalar work_duration;
  Scalar rest_duration{0};
  Scalar load_torque;
  int cycles{1};
};

enum class Phase { Work, Rest };

template <typename Scalar = double>
struct CapacitySample {
  Scalar time;  // minutes
  Scalar gamma_cem;
  Scalar fatigue_index;
  Phase phase;
};

template <typename Scalar = double>
struct CapacityTrajectory {
  std::vector<CapacitySample<Scalar>> samples;
  /// Capacity at the end of each cycle's rest (end of work when rest is 0).
  std::vector<Scalar> end_of_rest;
  bool cumulative_fatigue{false};
  bool overexertion{false};
};

namespace detail {

template <typename Scalar>
void require(bool ok, const char* what) {
  if (!ok) throw DomainError(what);
}

template <typename Scalar>
void validate(const FatigueParams<Scalar>& p) {
  require<Scalar>(p.fatigue_rate > 0, "fatigue rate k must be positive");
  require<Scalar>(p.recovery_rate > 0, "recovery rate R must be positive");
}

// Fatigue index gained while holding `load` for `t`, starting from capacity
// `gamma_0`.
template <typename Scalar>
Scalar index_increment(Scalar gamma_max, Scalar gamma_0, Scalar load, Scalar t,
                       const FatigueParams<Scalar>& p, IndexForm form) {
  if (load == 0 || t == 0) return Scalar(0);
  const Scalar k = p.fatigue_rate;
  if (form == IndexForm::TableConsistent) return k * load * t / gamma_max;
  const Scalar ratio = gamma_max / gamma_0;
  return ratio * ratio * std::expm1(Scalar(2) * k * load * t / gamma_max) / (Scalar(2) * k);
}

}  // namespace detail

/// Current strength after holding `load` for `t` minutes from `gamma_0`.
template <typename Scalar>
Scalar capacity_under_load(Scalar gamma_max, Scalar gamma_0, Scalar load, Scalar t,
                           const FatigueParams<Scalar>& params = {}) {
  detail::validate(params);
  detail::require<Scalar>(gamma_max > 0, "gamma_max must be positive");
  detail::require<Scalar>(gamma_0 > 0, "gamma_0 must be positive");
  detail::require<Scalar>(gamma_0 <= gamma_max, "gamma_0 must not exceed gamma_max");
  detail::require<Scalar>(load >= 0, "load torque must be nonnegative");
  detail::require<Scalar>(t >= 0, "time must be nonnegative");
  return gamma_0 * std::exp(-params.fatigue_rate * load * t / gamma_max);
}

/// Fatigue index accumulated by a rested joint after `t` minutes at `load`.
template <typename Scalar>
Scalar fatigue_index(Scalar gamma_max, Scalar load, Scalar t,
                     const FatigueParams<Scalar>& params = {},
                     IndexForm form = IndexForm::TableConsistent) {
  detail::validate(params);
  detail::require<Scalar>(gamma_max > 0, "gamma_max must be positive");
  detail::require<Scalar>(load >= 0, "load torque must be nonnegative");
  detail::require<Scalar>(t >= 0, "time must be nonnegative");
  return detail::index_increment(gamma_max, gamma_max, load, t, params, form);
}

/// Time until the capacity of a rested joint falls to the held load.
template <typename Scalar>
EnduranceTime<Scalar> endurance_time(Scalar gamma_max, Scalar load,
                                     const FatigueParams<Scalar>& params = {}) {
  detail::validate(params);
  detail::require<Scalar>(gamma_max > 0, "gamma_max must be positive");
  if (!(load > 0)) {
    return {std::numeric_limits<Scalar>::infinity(), LimitStatus::NoFatigueLimit};
  }
  if (load > gamma_max) return {Scalar(0), LimitStatus::Overexertion};
  const Scalar minutes =
      gamma_max / (params.fatigue_rate * load) * std::log(gamma_max / load);
  return {minutes, LimitStatus::Finite};
}

/// Capacity after resting `t` minutes from `gamma_0`.
template <typename Scalar>
Scalar recover_capacity(Scalar gamma_max, Scalar gamma_0, Scalar t,
                        const FatigueParams<Scalar>& params = {}) {
  detail::validate(params);
  detail::require<Scalar>(gamma_max > 0, "gamma_max must be positive");
  detail::require<Scalar>(gamma_0 >= 0, "gamma_0 must be nonnegative");
  detail::require<Scalar>(gamma_0 <= gamma_max, "gamma_0 must not exceed gamma_max");
  detail::require<Scalar>(t >= 0, "time must be nonnegative");
  return gamma_max + (gamma_0 - gamma_max) * std::exp(-params.recovery_rate * t);
}

/// Rest time needed to climb from `gamma_0` back to `fraction * gamma_max`.
/// This is the exact inverse of recover_capacity.
template <typename Scalar>
RecoveryTime<Scalar> recovery_time_to_fraction(Scalar gamma_max, Scalar gamma_0,
                                               Scalar fraction,
                                               const FatigueParams<Scalar>& params = {}) {
  detail::validate(params);
  detail::require<Scalar>(gamma_max > 0, "gamma_max must be positive");
  detail::require<Scalar>(gamma_0 >= 0, "gamma_0 must be nonnegative");
  detail::require<Scalar>(gamma_0 <= gamma_max, "gamma_0 must not exceed gamma_max");
  if (fraction >= 1) {
    return {std::numeric_limits<Scalar>::infinity(), RecoveryStatus::Unreachable};
  }
  if (fraction * gamma_max <= gamma_0) return {Scalar(0), RecoveryStatus::AlreadyRecovered};
  const Scalar minutes = -std::log((Scalar(1) - fraction) * gamma_max / (gamma_max - gamma_0)) /
                         params.recovery_rate;
  return {minutes, RecoveryStatus::Reached};
}

/// Number of fixed-duration work units (e.g. drilled holes) that fit in the
/// endurance time of continuous work, rounded half up.
template <typename Scalar>
HoleCount holes_capacity(Scalar gamma_max, Scalar load, Scalar unit_time,
                         const FatigueParams<Scalar>& params = {}) {
  detail::require<Scalar>(unit_time > 0, "time per unit must be positive");
  const auto endurance = endurance_time(gamma_max, load, params);
  switch (endurance.status) {
    case LimitStatus::Overexertion:
      return {0, LimitStatus::Overexertion};
    case LimitStatus::NoFatigueLimit:
      return {std::numeric_limits<std::int64_t>::max(), LimitStatus::NoFatigueLimit};
    case LimitStatus::Finite:
      break;
  }
  const auto count = std::floor(endurance.minutes / unit_time + Scalar(0.5));
  return {static_cast<std::int64_t>(count), LimitStatus::Finite};
}

/// Chains the closed-form work decay and rest recovery over `cycle.cycles`
/// repetitions, sampling every `step` minutes plus every phase boundary.
template <typename Scalar>
CapacityTrajectory<Scalar> simulate_schedule(const JointCapacity<Scalar>& capacity,
                                             const TaskCycle<Scalar>& cycle,
                                             const FatigueParams<Scalar>& params, Scalar step,
                                             IndexForm form = IndexForm::TableConsistent) {
  detail::validate(params);
  detail::require<Scalar>(step > 0, "sampling step must be positive");
  detail::require<Scalar>(capacity.gamma_max > 0, "gamma_max must be positive");
  detail::require<Scalar>(capacity.gamma_cem > 0 && capacity.gamma_cem <= capacity.gamma_max,
                          "gamma_cem must lie in (0, gamma_max]");
  detail::require<Scalar>(capacity.fatigue_index >= 0, "fatigue index must be nonnegative");
  detail::require<Scalar>(cycle.work_duration > 0, "work duration must be positive");
  detail::require<Scalar>(cycle.rest_duration >= 0, "rest duration must be nonnegative");
  detail::require<Scalar>(cycle.load_torque >= 0, "load torque must be nonnegative");
  detail::require<Scalar>(cycle.cycles >= 1, "at least one cycle is required");

  const Scalar gmax = capacity.gamma_max;
  CapacityTrajectory<Scalar> out;
  Scalar t0 = 0;
  Scalar cem = capacity.gamma_cem;
  Scalar index = capacity.fatigue_index;
  out.samples.push_back({t0, cem, index, Phase::Work});

  // Samples one phase starting at (t0, cem, index); returns the end state.
  auto run_phase = [&](Scalar duration, Phase phase) {
    const Scalar cem0 = cem;
    const Scalar index0 = index;
    for (std::int64_t n = 1;; ++n) {
      const Scalar tau = std::min(Scalar(n) * step, duration);
      if (phase == Phase::Work) {
        cem = capacity_under_load(gmax, cem0, cycle.load_torque, tau, params);
        index = index0 + detail::index_increment(gmax, cem0, cycle.load_torque, tau, params, form);
      } else {
        cem = recover_capacity(gmax, cem0, tau, params);
      }
      out.samples.push_back({t0 + tau, cem, index, phase});
      if (tau >= duration) break;
    }
    t0 += duration;
  };

  for (int c = 0; c < cycle.cycles; ++c) {
    run_phase(cycle.work_duration, Phase::Work);
    if (cem < cycle.load_torque) out.overexertion = true;
    if (cycle.rest_duration > 0) run_phase(cycle.rest_duration, Phase::Rest);
    if (!out.end_of_rest.empty() && cem < out.end_of_rest.back()) out.cumulative_fatigue = true;
    out.end_of_rest.push_back(cem);
  }
  return out;
}

/// Integrates capacity under a time-varying load with fixed-step RK4.
///
/// The joint fatigues whenever `load(t) > 0` and recovers otherwise.
/// `load` takes and `duration`/`step` are expressed in minutes.
template <typename Scalar>
CapacityTrajectory<Scalar> simulate_load_profile(const JointCapacity<Scalar>& capacity,
                                                 const std::function<Scalar(Scalar)>& load,
                                                 Scalar duration,
                                                 const FatigueParams<Scalar>& params = {},
                                                 Scalar step = Scalar(1e-3),
                                                 IndexForm form = IndexForm::TableConsistent) {
  detail::validate(params);
  detail::require<Scalar>(step > 0, "integration step must be positive");
  detail::require<Scalar>(duration >= 0, "duration must be nonnegative");
  detail::require<Scalar>(capacity.gamma_max > 0, "gamma_max must be positive");
  detail::require<Scalar>(capacity.gamma_cem >= 0 && capacity.gamma_cem <= capacity.gamma_max,
                          "gamma_cem must lie in [0, gamma_max]");

  const Scalar gmax = capacity.gamma_max;
  const Scalar k = params.fatigue_rate;
  const Scalar r = params.recovery_rate;

  struct State {
    Scalar cem;
    Scalar index;
  };
  auto rhs = [&](Scalar t, const State& s) -> State {
    const Scalar l = load(t);
    if (l > 0) {
      const Scalar dindex =
          form == IndexForm::TableConsistent ? k * l / gmax : gmax * l / (s.cem * s.cem);
      return {-k * s.cem * l / gmax, dindex};
    }
    return {r * (gmax - s.cem), Scalar(0)};
  };

  CapacityTrajectory<Scalar> out;
  State s{capacity.gamma_cem, capacity.fatigue_index};
  auto phase_at = [&](Scalar t) { return load(t) > 0 ? Phase::Work : Phase::Rest; };
  out.samples.push_back({Scalar(0), s.cem, s.index, phase_at(Scalar(0))});

  const auto steps = static_cast<std::int64_t>(std::ceil(duration / step - Scalar(1e-9)));
  Scalar t = 0;
  for (std::int64_t n = 1; n <= steps; ++n) {
    const Scalar t_next = std::min(Scalar(n) * step, duration);
    const Scalar h = t_next - t;
    const State k1 = rhs(t, s);
    const State k2 = rhs(t + h / 2, {s.cem + h / 2 * k1.cem, s.index + h / 2 * k1.index});
    const State k3 = rhs(t + h / 2, {s.cem + h / 2 * k2.cem, s.index + h / 2 * k2.index});
    const State k4 = rhs(t + h, {s.cem + h * k3.cem, s.index + h * k3.index});
    s.cem += h / 6 * (k1.cem + 2 * k2.cem + 2 * k3.cem + k4.cem);
    s.index += h / 6 * (k1.index + 2 * k2.index + 2 * k3.index + k4.index);
    t = t_next;
    const Phase phase = phase_at(t);
    if (phase == Phase::Work && s.cem < load(t)) out.overexertion = true;
    out.samples.push_back({t, s.cem, s.index, phase});
  }
  return out;
}

}  // namespace ergo
