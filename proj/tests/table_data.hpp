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

// Drilling-study reference values (70 kg / 1.70 m operator).

#include <array>

namespace ergo::testdata {

struct MeanSigma {
  double mean;
  double sigma;
};

inline constexpr MeanSigma kShoulderStrength{75.620, 17.476};
inline constexpr MeanSigma kElbowStrength{75.141, 18.470};

struct LoadTorques {
  double machine_mass;  // per arm, kg
  double shoulder;
  double elbow;
};

inline constexpr std::array<LoadTorques, 2> kTorques{{{2.5, 23.043, 7.394}, {3.5, 26.873, 9.672}}};

inline constexpr std::array<int, 5> kZ{-2, -1, 0, 1, 2};

// [load 2.5, 3.5][shoulder, elbow][z -2..+2]
inline constexpr double kEndurance[2][2][5] = {
    {{60.155, 140.125, 233.984, 338.456, 451.520}, {509.083, 936.582, 1413.831, 1928.300, 2472.535}},
    {{37.623, 100.198, 174.683, 258.268, 349.221}, {325.501, 621.517, 955.564, 1318.062, 1703.315}},
};

inline constexpr double kIndex30s[2][2][5] = {
    {{0.283, 0.198, 0.152, 0.124, 0.104}, {0.097, 0.065, 0.049, 0.039, 0.033}},
    {{0.330, 0.231, 0.178, 0.144, 0.122}, {0.127, 0.085, 0.064, 0.052, 0.043}},
};

// The source table labels its recovery rows "3.5 kg Shoulder" twice and
// "2.5 kg Elbow" twice. Recomputing every cell shows the rows are, in order,
// 3.5 kg shoulder, 3.5 kg elbow, 2.5 kg shoulder, 2.5 kg elbow; stored here
// by [load][joint][z] like the other tables.
inline constexpr double kRecovery[2][2][5] = {
    {{80.243, 72.301, 66.270, 61.412, 57.343}, {55.584, 46.101, 39.240, 33.863, 29.439}},
    {{83.542, 75.758, 69.815, 65.011, 60.981}, {61.945, 52.576, 45.774, 40.432, 36.033}},
};

// [load][z]
inline constexpr int kHoles[2][5] = {{2, 5, 8, 11, 15}, {1, 3, 6, 9, 11}};

inline constexpr double kHoleTimeMinutes = 0.5;

}  // namespace ergo::testdata
