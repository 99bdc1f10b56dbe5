/*
 Copyright 2026 The Furuta Bench Authors

 Licensed under the Apache License, Version 2.0 (the "License");
 you may not use this file except in compliance with the License.
 You may obtain a copy of the License at

      https://www.apache.org/licenses/LICENSE-2.0

 Unless required by applicable law or agreed to in writing, software
 distributed under the License is distributed on an "AS IS" BASIS,
 WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 See the License for the specific language governing permissions and
 limitations under the License.
*/

#pragma once

#include <string>

#include "furuta/linalg.hpp"

namespace furuta {

/// Linear model dx = A x + B u around the upright equilibrium,
/// x = [theta, alpha, theta_dot, alpha_dot], u in volts.
struct LinearModel {
    Mat4 A;
    Vec4 B;
};

/// Checks the kinematic structure: rows 0 and 1 of A are [0,0,1,0] and
/// [0,0,0,1], and B[0] = B[1] = 0. Throws std::invalid_argument otherwise.
void validate_linear_model(const LinearModel& m);

/// Loads {"A": 4x4, "B": 4} from a JSON file and validates the structure.
LinearModel load_linear_model(const std::string& path);

}  // namespace furuta
