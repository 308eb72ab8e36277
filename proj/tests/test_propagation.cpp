// SPDX-License-Identifier: Apache-2.0
//
// risfp: RIS-assisted indoor RSS fingerprint database generator
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "risfp/propagation.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace risfp;

namespace
{
PathlossParams params()
{
    PathlossParams p;
    p.wavelength = 299792458.0 / 5.2e9;
    return p;
}

RisGeometry panel(std::size_t rows, std::size_t cols, double lambda, double a = 1.0)
{
    RisGeometry ris;
    ris.rows = rows;
    ris.cols = cols;
    ris.unit_length = lambda / 2;
    ris.unit_width = lambda / 2;
    ris.reflection_magnitude = a;
    return ris;
}

// Close-in model written out directly
double ci(double ref_db, double n, double ratio) { return ref_db + 10.0 * n * std::log10(ratio); }
} // namespace

TEST(Propagation, LosReferenceValue)
{
    auto p = params();
    EXPECT_NEAR(pl_los(p, 1.0, 0.0), 46.7679, 1e-3);
    EXPECT_NEAR(pl_los(p, 1.0, 0.0), 20.0 * std::log10(4.0 * std::numbers::pi / p.wavelength), 1e-12);
}

TEST(Propagation, LosDistanceAndShadowing)
{
    auto p = params();
    for (double d : {1.0, 2.5, 7.0, 13.3})
    {
        EXPECT_NEAR(pl_los(p, 2 * d, 0.0) - pl_los(p, d, 0.0), 10.0 * 1.73 * std::log10(2.0), 1e-12);
        EXPECT_NEAR(pl_los(p, d, 3.0) - pl_los(p, d, 0.0), 3.0, 1e-12);
    }
}

TEST(Propagation, LosBelowReferenceIsAnError)
{
    auto p = params();
    EXPECT_THROW(pl_los(p, 0.5, 0.0), SubReferenceDistance);
    EXPECT_THROW(pl_los(p, 0.0, 0.0), std::domain_error);
}

TEST(Propagation, VlosReferenceValue)
{
    auto p = params();
    auto ris = panel(20, 20, p.wavelength);
    double oracle = 20.0 * std::log10(4.0 * std::numbers::pi / (400.0 * std::pow(p.wavelength / 2, 2)));
    EXPECT_NEAR(pl_vlos(p, ris, 1.0, 1.0, 0.0), oracle, 1e-12);
    EXPECT_NEAR(pl_vlos(p, ris, 1.0, 1.0, 0.0), 31.5515, 1e-3);
}

TEST(Propagation, VlosUnitCountAndReflectionAlgebra)
{
    auto p = params();
    double two = 20.0 * std::log10(2.0);
    EXPECT_NEAR(pl_vlos(p, panel(10, 10, p.wavelength), 11.2, 6.0, 0.0) -
                    pl_vlos(p, panel(10, 20, p.wavelength), 11.2, 6.0, 0.0),
                two, 1e-12);
    EXPECT_NEAR(pl_vlos(p, panel(10, 10, p.wavelength, 0.5), 11.2, 6.0, 0.0) -
                    pl_vlos(p, panel(10, 10, p.wavelength, 1.0), 11.2, 6.0, 0.0),
                two, 1e-12);
}

TEST(Propagation, VlosDistanceTerm)
{
    auto p = params();
    auto ris = panel(20, 20, p.wavelength);
    double ref = pl_vlos(p, ris, 1.0, 1.0, 0.0);
    EXPECT_NEAR(pl_vlos(p, ris, 11.18, 7.3, -2.0), ci(ref, 1.73, 11.18 * 7.3) - 2.0, 1e-12);
    EXPECT_THROW(pl_vlos(p, ris, 0.0, 3.0, 0.0), std::domain_error);
    EXPECT_THROW(pl_vlos(p, ris, 5.0, 0.5, 0.0), SubReferenceDistance);
}

TEST(Propagation, SingleBounce)
{
    auto p = params();
    EXPECT_NEAR(pl_sb_nlos(p, 0.4, 0.6, 0.0), 46.7679, 1e-3);
    EXPECT_NEAR(pl_sb_nlos(p, 3.0, 4.0, -5.0) - pl_sb_nlos(p, 3.0, 4.0, 0.0), -5.0, 1e-12);
    for (double d : {1.5, 4.0, 12.0})
        EXPECT_GT(pl_sb_nlos(p, d / 2, d / 2, 0.0), pl_los(p, d, 0.0));
    EXPECT_NEAR(pl_sb_nlos(p, 2.0, 5.0, 0.0), ci(pl_los(p, 1.0, 0.0), 3.19, 7.0), 1e-12);
}

TEST(Propagation, DoubleBounce)
{
    auto p = params();
    auto ris = panel(20, 20, p.wavelength);
    EXPECT_NEAR(pl_db_nlos(p, ris, 1.0, 0.3, 0.7, 0.0), pl_vlos(p, ris, 1.0, 1.0, 0.0), 1e-12);
    EXPECT_NEAR(pl_db_nlos(p, ris, 9.0, 4.0, 6.0, 0.0) - pl_db_nlos(p, ris, 9.0, 2.0, 3.0, 0.0),
                10.0 * 3.19 * std::log10(2.0), 1e-12);
    auto q = p;
    q.n_nlos = q.n_los;
    EXPECT_NEAR(pl_db_nlos(q, ris, 9.0, 4.0, 6.0, 1.5), pl_vlos(q, ris, 9.0, 10.0, 1.5), 1e-12);
}

TEST(Propagation, MonotoneInDistance)
{
    auto p = params();
    auto ris = panel(5, 5, p.wavelength);
    for (double d = 1.0; d < 30.0; d += 0.7)
    {
        EXPECT_LT(pl_los(p, d, 0.0), pl_los(p, d + 0.1, 0.0));
        EXPECT_LT(pl_vlos(p, ris, d, 2.0, 0.0), pl_vlos(p, ris, d + 0.1, 2.0, 0.0));
        EXPECT_LT(pl_vlos(p, ris, 2.0, d, 0.0), pl_vlos(p, ris, 2.0, d + 0.1, 0.0));
        EXPECT_LT(pl_sb_nlos(p, d, 1.0, 0.0), pl_sb_nlos(p, d + 0.1, 1.0, 0.0));
        EXPECT_LT(pl_db_nlos(p, ris, 3.0, d, 1.0, 0.0), pl_db_nlos(p, ris, 3.0, d + 0.1, 1.0, 0.0));
    }
}

TEST(Propagation, SingleSubWavelengthUnitLosesMoreThanFreeSpace)
{
    auto p = params();
    RisGeometry ris = panel(1, 1, p.wavelength);
    double ris_first = pl_vlos(p, ris, 1.0, 1.0, 0.0);
    double fs_first = pl_los(p, 1.0, 0.0);
    EXPECT_GT(ris_first, fs_first);
}

TEST(Propagation, DbToLinear)
{
    EXPECT_EQ(db_to_linear(0.0), 1.0);
    EXPECT_NEAR(db_to_linear(10.0), 0.1, 1e-15);
    EXPECT_NEAR(db_to_linear(46.766), 2.106e-5, 1e-8);
    for (double x : {1e-9, 0.03, 1.0, 42.0})
        EXPECT_NEAR(db_to_linear(-10.0 * std::log10(x)) / x, 1.0, 1e-12);
}

TEST(Propagation, ParameterValidation)
{
    auto p = params();
    EXPECT_NO_THROW(validate(p));
    p.n_los = 0.0;
    EXPECT_THROW(validate(p), std::invalid_argument);
    p = params();
    p.sigma_nlos = -1.0;
    EXPECT_THROW(validate(p), std::invalid_argument);
}
