// Copyright 2026 The evtaug Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <array>
#include <cmath>
#include <cstddef>

namespace evt {

/// 4x4 homogeneous spatiotemporal transform acting on row vectors
/// [y, x, t, 1] by right-multiplication: v' = v * M.
///
/// Storage is row-major. Every matrix built by this library is affine: the
/// fourth column stays (0, 0, 0, 1), translations live in the fourth row.
struct Mat4 {
    std::array<double, 16> m{};

    static constexpr Mat4 identity() {
        Mat4 r;
        r.m = {1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1};
        return r;
    }

    constexpr double at(int row, int col) const { return m[static_cast<size_t>(row) * 4 + col]; }
    constexpr double& at(int row, int col) { return m[static_cast<size_t>(row) * 4 + col]; }

    /// Applies the transform to a row vector (y, x, t) with implicit w = 1.
    /// Assumes the affine form (fourth column untouched).
    constexpr std::array<double, 3> apply(double y, double x, double t) const {
        return {
            y * m[0] + x * m[4] + t * m[8] + m[12],
            y * m[1] + x * m[5] + t * m[9] + m[13],
            y * m[2] + x * m[6] + t * m[10] + m[14],
        };
    }

    friend constexpr Mat4 operator*(const Mat4& a, const Mat4& b) {
        Mat4 r;
        for (int i = 0; i < 4; ++i) {
            for (int j = 0; j < 4; ++j) {
                double s = 0.0;
                for (int k = 0; k < 4; ++k) s += a.at(i, k) * b.at(k, j);
                r.at(i, j) = s;
            }
        }
        return r;
    }

    friend bool operator==(const Mat4&, const Mat4&) = default;
};

/// Numeric determinant by cofactor expansion along the first row. Used as an
/// independent check against the analytic value of the rotation matrices.
inline double determinant(const Mat4& a) {
    auto det3 = [](double a00, double a01, double a02, double a10, double a11, double a12,
                   double a20, double a21, double a22) {
        return a00 * (a11 * a22 - a12 * a21) - a01 * (a10 * a22 - a12 * a20) +
               a02 * (a10 * a21 - a11 * a20);
    };
    const auto& m = a.m;
    double d = 0.0;
    d += m[0] * det3(m[5], m[6], m[7], m[9], m[10], m[11], m[13], m[14], m[15]);
    d -= m[1] * det3(m[4], m[6], m[7], m[8], m[10], m[11], m[12], m[14], m[15]);
    d += m[2] * det3(m[4], m[5], m[7], m[8], m[9], m[11], m[12], m[13], m[15]);
    d -= m[3] * det3(m[4], m[5], m[6], m[8], m[9], m[10], m[12], m[13], m[14]);
    return d;
}

/// Largest per-entry gap between two matrices, scaled by max(1, |a|, |b|) so
/// the comparison stays meaningful when entries span many orders of magnitude.
inline double max_entry_gap(const Mat4& a, const Mat4& b) {
    double worst = 0.0;
    for (int i = 0; i < 16; ++i) {
        double scale = std::max({1.0, std::fabs(a.m[i]), std::fabs(b.m[i])});
        worst = std::max(worst, std::fabs(a.m[i] - b.m[i]) / scale);
    }
    return worst;
}

}  // namespace evt
