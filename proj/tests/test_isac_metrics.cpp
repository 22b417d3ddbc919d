// SPDX-License-Identifier: Apache-2.0
//
// isac-game: Stackelberg defense simulator for RIS-assisted ISAC links
// Copyright (C) 2026 The isac-game Authors
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


#include "support.hpp"

#include "isac/isac_metrics.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

using namespace isac;
using Catch::Approx;
using isac::test::max_diff;

namespace
{
    struct Scene
    {
        Scenario sc;
        ChannelSet ch;
        NoisePowers np;

        explicit Scene(std::uint64_t seed, Scenario s = {}) : sc(std::move(s))
        {
            Rng rng(seed);
            ch = sample_channel_set(sc, rng);
            np = noise_powers(sc);
        }
    };

    double sensing_at(const Scene &s, double g, double sigma_att2)
    {
        const CMatrix phi = ris_matrix(g, s.sc.P, s.sc.g_max);
        const BeamformingDesign bf = build_beamforming(s.ch, phi, s.sc.P_trans, s.sc.power_split);
        return sensing_sinr(sensing_chain(s.ch, phi, bf, s.sc.epsilon, s.np.sigma2, sigma_att2, s.np.sigma_r2), bf.R);
    }
} // namespace

TEST_CASE("noise power conversion", "[metrics]")
{
    const Scenario sc;
    const NoisePowers np = noise_powers(sc);
    CHECK(watts_to_dbm(np.sigma2) == Approx(-104.0).epsilon(1e-12));
    CHECK(np.sigma2 == Approx(std::pow(10.0, -13.4)).epsilon(1e-12));
    CHECK(np.sigma_y2 == np.sigma2);
    CHECK(np.sigma_r2 == np.sigma2);
}

TEST_CASE("RIS matrix", "[metrics]")
{
    CHECK(ris_matrix(0.0, 4, 1.0).max_abs() == 0.0);
    CHECK(max_diff(ris_matrix(1.0, 16, 1.0), CMatrix::identity(16)) == 0.0);
    const CMatrix phi = ris_matrix(0.3, 16, 1.0);
    CHECK(trace(phi * hermitian(phi)).real() == Approx(16 * 0.09).epsilon(1e-14));
    CHECK_THROWS_AS(ris_matrix(1.2, 4, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(ris_matrix(-0.1, 4, 1.0), std::invalid_argument);
}

TEST_CASE("beamforming design", "[metrics]")
{
    const Scene s(31);
    const CMatrix phi = ris_matrix(0.5, s.sc.P, 1.0);

    const BeamformingDesign all_comm = build_beamforming(s.ch, phi, 0.9, 1.0);
    CHECK(all_comm.B_r.max_abs() == 0.0);
    CHECK(trace(all_comm.R).real() == Approx(0.9).epsilon(1e-12));

    const BeamformingDesign all_sense = build_beamforming(s.ch, phi, 0.9, 0.0);
    CHECK(max_diff(all_sense.R, (0.9 / s.sc.M) * CMatrix::identity(s.sc.M)) <= 1e-15);

    const BeamformingDesign bf = build_beamforming(s.ch, phi, s.sc.P_trans, s.sc.power_split);
    CMatrix sum = gram(bf.B_r);
    for (const CMatrix &ri : bf.R_i)
    {
        sum += ri;
        CHECK(is_hermitian_psd(ri, 1e-12));
        const std::vector<double> ev = hermitian_eigenvalues(ri);
        CHECK(ev[ev.size() - 2] <= 1e-10 * ev.back());
    }
    CHECK(max_diff(bf.R, sum) <= 1e-10);
    CHECK(std::abs(trace(bf.R).real() - s.sc.P_trans) <= 1e-8);

    CHECK_THROWS_AS(build_beamforming(s.ch, phi, 0.9, 1.5), std::invalid_argument);
    CHECK_THROWS_AS(build_beamforming(s.ch, phi, 0.0, 0.5), std::invalid_argument);
}

TEST_CASE("beamforming rejects a vanishing equivalent channel", "[metrics]")
{
    Scene s(32);
    s.ch.h2[1] = CMatrix(s.sc.M, 1);
    CHECK_THROWS_AS(build_beamforming(s.ch, ris_matrix(0.0, s.sc.P, 1.0), 0.9, 0.5), DegenerateChannel);
}

TEST_CASE("communication SINR", "[metrics]")
{
    const Scene s(33);
    const CMatrix phi = ris_matrix(0.6, s.sc.P, 1.0);
    BeamformingDesign bf = build_beamforming(s.ch, phi, s.sc.P_trans, s.sc.power_split);

    SECTION("zero numerator")
    {
        bf.R_i[0] = CMatrix(s.sc.M, s.sc.M);
        CHECK(comm_sinr(0, s.ch, bf, phi, s.np.sigma2, 0.0, s.np.sigma_y2) == 0.0);
    }
    SECTION("matched-filter numerator")
    {
        const double pc = s.sc.power_split * s.sc.P_trans;
        for (std::size_t i = 0; i < s.sc.N; ++i)
        {
            const CMatrix h = equivalent_channel(s.ch, i, phi);
            CHECK(quad_form(h, bf.R_i[i]).real() ==
                  Approx(pc / static_cast<double>(s.sc.N) * squared_norm(h)).epsilon(1e-12));
        }
    }
    SECTION("strictly decreasing in attack power")
    {
        double prev = comm_sinr(0, s.ch, bf, phi, s.np.sigma2, 0.0, s.np.sigma_y2);
        for (int k = 1; k <= 50; ++k)
        {
            const double v = comm_sinr(0, s.ch, bf, phi, s.np.sigma2, s.np.sigma2 * k / 50.0, s.np.sigma_y2);
            CHECK(v < prev);
            prev = v;
        }
    }
    SECTION("average over users")
    {
        const double a = asinr(s.ch, bf, phi, s.np.sigma2, 0.0, s.np.sigma_y2);
        const double m = 0.5 * (comm_sinr(0, s.ch, bf, phi, s.np.sigma2, 0.0, s.np.sigma_y2) +
                                comm_sinr(1, s.ch, bf, phi, s.np.sigma2, 0.0, s.np.sigma_y2));
        CHECK(std::abs(a - m) <= 1e-12 * std::abs(m));
    }
    CHECK_THROWS_AS(comm_sinr(5, s.ch, bf, phi, s.np.sigma2, 0.0, s.np.sigma_y2), std::out_of_range);
}

TEST_CASE("single user over a direct two-antenna link", "[metrics]")
{
    ChannelSet ch;
    ch.H = CMatrix(1, 2);
    ch.h1 = {CMatrix(1, 1)};
    ch.h2 = {CMatrix{{cplx(1.0, 1.0)}, {cplx(2.0, 0.0)}}};
    ch.T = CMatrix(1, 1);
    const CMatrix phi = ris_matrix(0.0, 1, 1.0);
    const BeamformingDesign bf = build_beamforming(ch, phi, 0.9, 1.0);
    // |h^H b|^2 = p ||h||^2 with ||h||^2 = 2 + 4.
    const double expected = 0.9 * 6.0 / 1e-3;
    CHECK(comm_sinr(0, ch, bf, phi, 0.0, 0.0, 1e-3) == Approx(expected).epsilon(1e-12));
    CHECK(asinr(ch, bf, phi, 0.0, 0.0, 1e-3) == comm_sinr(0, ch, bf, phi, 0.0, 0.0, 1e-3));
}

TEST_CASE("identical users share one SINR", "[metrics]")
{
    Scene s(34);
    s.ch.h1[1] = s.ch.h1[0];
    s.ch.h2[1] = s.ch.h2[0];
    const CMatrix phi = ris_matrix(0.4, s.sc.P, 1.0);
    const BeamformingDesign bf = build_beamforming(s.ch, phi, 0.9, 0.5);
    const double u0 = comm_sinr(0, s.ch, bf, phi, s.np.sigma2, 0.0, s.np.sigma_y2);
    CHECK(asinr(s.ch, bf, phi, s.np.sigma2, 0.0, s.np.sigma_y2) == Approx(u0).epsilon(1e-12));
}

TEST_CASE("sensing chain", "[metrics]")
{
    const Scene s(35);

    SECTION("no reflection")
    {
        const CMatrix phi = ris_matrix(0.0, s.sc.P, 1.0);
        const BeamformingDesign bf = build_beamforming(s.ch, phi, 0.9, 0.5);
        const double sa = 0.2 * s.np.sigma2;
        const SensingChain c = sensing_chain(s.ch, phi, bf, 0.1, s.np.sigma2, sa, s.np.sigma_r2);
        CHECK(c.F.max_abs() == 0.0);
        CHECK(c.X.max_abs() == 0.0);
        CHECK(c.C.max_abs() == 0.0);
        CHECK(max_diff(c.Z, (s.np.sigma_r2 + sa) * CMatrix::identity(s.sc.M)) == 0.0);
        CHECK(max_diff(c.J, c.Z) == 0.0);
        CHECK(sensing_sinr(c, bf.R) == 0.0);
    }
    SECTION("no residual self-interference")
    {
        const CMatrix phi = ris_matrix(0.8, s.sc.P, 1.0);
        const BeamformingDesign bf = build_beamforming(s.ch, phi, 0.9, 0.5);
        const SensingChain c = sensing_chain(s.ch, phi, bf, 0.0, s.np.sigma2, 0.0, s.np.sigma_r2);
        CHECK(max_diff(c.J, c.Z) == 0.0);
    }
    SECTION("default scene")
    {
        const CMatrix phi = ris_matrix(0.8, s.sc.P, 1.0);
        const BeamformingDesign bf = build_beamforming(s.ch, phi, 0.9, 0.5);
        const SensingChain c = sensing_chain(s.ch, phi, bf, s.sc.epsilon, s.np.sigma2, 0.0, s.np.sigma_r2);
        CHECK(is_hermitian_psd(c.J, 1e-10 * c.J.max_abs()));
        CHECK_NOTHROW(solve_hpd(c.J, CMatrix::identity(s.sc.M)));
        const CMatrix F = hermitian(s.ch.H) * hermitian(phi) * s.ch.T * phi * s.ch.H;
        CHECK(max_diff(c.F, F) <= 1e-12 * std::max(F.max_abs(), 1e-300));
        CHECK(is_hermitian_psd(c.J - c.Z, 1e-10 * c.J.max_abs()));
    }
    CHECK_THROWS_AS(sensing_chain(s.ch, ris_matrix(0.5, s.sc.P, 1.0),
                                  build_beamforming(s.ch, ris_matrix(0.5, s.sc.P, 1.0), 0.9, 0.5), 1.5, 0.0, 0.0, 1.0),
                    std::invalid_argument);
}

TEST_CASE("scalar sensing SINR by hand", "[metrics]")
{
    SensingChain c;
    c.F = CMatrix{{cplx(0.3, -0.4)}};
    c.J = CMatrix{{cplx(2.0, 0.0)}};
    const CMatrix R{{cplx(0.7, 0.0)}};
    CHECK(sensing_sinr(c, R) == Approx(0.25 * 0.7 / 2.0).epsilon(1e-14));
}

TEST_CASE("both SINRs are non-increasing in attack power", "[metrics]")
{
    for (std::uint64_t seed : {36u, 37u, 38u})
    {
        const Scene s(seed);
        for (double g : {0.2, 0.7, 1.0})
        {
            double prev = sensing_at(s, g, 0.0);
            for (int k = 1; k <= 50; ++k)
            {
                const double v = sensing_at(s, g, s.np.sigma2 * k / 50.0);
                CHECK(v <= prev * (1.0 + 1e-12));
                prev = v;
            }
        }
    }
}

TEST_CASE("RIS noise amplification is quadratic in the gain", "[metrics]")
{
    const Scene s(39);
    const auto amp = [&](double g) { return squared_norm(hermitian(ris_matrix(g, s.sc.P, 1.0)) * s.ch.h1[0]); };
    for (double g : {0.1, 0.35, 0.9})
        CHECK(amp(g) == Approx(g * g * amp(1.0)).epsilon(1e-12));
}

TEST_CASE("sensing rate", "[metrics]")
{
    CHECK(sensing_rate(0.0, 1e7) == 0.0);
    CHECK(sensing_rate(1.0, 1e7) == Approx(1e7).epsilon(1e-15));
    CHECK(sensing_rate(3.0, 1e7) == Approx(2e7).epsilon(1e-15));
}

TEST_CASE("factored link model matches the matrix route", "[metrics]")
{
    std::mt19937_64 pick(40);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const std::size_t Ms[] = {1, 2, 4, 8};
    const std::size_t Ps[] = {4, 8, 16, 32};
    for (int t = 0; t < 60; ++t)
    {
        Scenario sc;
        sc.M = Ms[t % 4];
        sc.P = Ps[(t / 4) % 4];
        sc.phase_profile = t % 2 ? PhaseProfile::sensing_aligned : PhaseProfile::zero;
        sc.corr_rho_bs = t % 3 == 0 ? 0.4 : 0.0;
        const Scene s(1000 + t, sc);
        const std::vector<cplx> phases = ris_phases(sc);
        const LinkModel lm(s.ch, phases, sc.epsilon, sc.P_trans, sc.power_split, s.np);

        const double g = u(pick), sa = u(pick) * s.np.sigma2;
        const CMatrix phi = ris_matrix(g, phases, sc.g_max);
        const BeamformingDesign bf = build_beamforming(s.ch, phi, sc.P_trans, sc.power_split);
        const double ref = sensing_sinr(sensing_chain(s.ch, phi, bf, sc.epsilon, s.np.sigma2, sa, s.np.sigma_r2), bf.R);
        const LinkModel::Result r = lm.evaluate(g, sa);
        CHECK(r.sensing_sinr == Approx(ref).epsilon(1e-9));
        for (std::size_t i = 0; i < sc.N; ++i)
            CHECK(r.per_user_sinr[i] ==
                  Approx(comm_sinr(i, s.ch, bf, phi, s.np.sigma2, sa, s.np.sigma_y2)).epsilon(1e-9));
    }
}

TEST_CASE("sensing rate keeps precision for tiny SINR", "[metrics]")
{
    // ln(1 + x) = x - x^2/2 + ...; forming 1 + x first would lose four digits.
    const double x = 1e-12;
    CHECK(sensing_rate(x, 1.0) == Approx((x - 0.5 * x * x) / std::numbers::ln2).epsilon(1e-14));
}
