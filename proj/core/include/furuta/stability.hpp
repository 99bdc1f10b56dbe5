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

#include <array>
#include <complex>
#include <stdexcept>

#include "furuta/linalg.hpp"

namespace furuta {

struct RootFindingError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// All eigenvalues of a real square matrix, sorted by (real, imag).
///
/// Computed from the characteristic polynomial (Faddeev-LeVerrier) with a
/// Durand-Kerner simultaneous root iteration. Adequate and dependency-free
/// for the 4x4 matrices handled here; throws RootFindingError if the
/// iteration fails to settle.
template <int N>
std::array<std::complex<double>, N> eigenvalues(const Mat<N>& m);

/// True iff every eigenvalue has real part < -margin.
template <int N>
bool is_hurwitz(const Mat<N>& m, double margin = 1e-9);

}  // namespace furuta
