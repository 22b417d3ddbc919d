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

#include "isac/scenario.hpp"

#include <cmath>
#include <stdexcept>

namespace isac
{
    namespace
    {
        void require(bool ok, const std::string &field, const std::string &why)
        {
            if (!ok)
                throw std::invalid_argument(field + ": " + why);
        }

        bool finite3(const Vec3 &v)
        {
            return std::isfinite(v[0]) && std::isfinite(v[1]) && std::isfinite(v[2]);
        }
    } // namespace

    double distance(const Vec3 &a, const Vec3 &b) noexcept
    {
        const double dx = b[0] - a[0], dy = b[1] - a[1], dz = b[2] - a[2];
        return std::sqrt(dx * dx + dy * dy + dz * dz);
    }

    void Geometry::validate() const
    {
        require(finite3(bs_pos), "bs_pos", "must be finite");
        require(finite3(ris_pos), "ris_pos", "must be finite");
        require(finite3(target_pos), "target_pos", "must be finite");
        require(finite3(user_center), "user_center", "must be finite");
        require(distance(bs_pos, ris_pos) > 0.0, "ris_pos", "BS-RIS distance must be positive");
        require(distance(ris_pos, target_pos) > 0.0, "target_pos", "RIS-target distance must be positive");
        require(std::isfinite(r_user) && r_user >= 0.0, "r_user", "must be >= 0");
        require(std::isfinite(carrier_freq) && carrier_freq > 0.0, "carrier_freq", "must be > 0");
    }

    void PathLossParams::validate() const
    {
        require(beta1 >= 0.0, "beta1", "must be >= 0");
        require(std::isfinite(beta2), "beta2", "must be finite");
        require(beta3 >= 0.0, "beta3", "must be >= 0");
        require(beta4 >= 0.0, "beta4", "must be >= 0");
        require(r0 > 0.0, "r0", "must be > 0");
        require(f0 > 0.0, "f0", "must be > 0");
    }

    std::string to_string(PhaseProfile p)
    {
        return p == PhaseProfile::zero ? "zero" : "sensing_aligned";
    }

    PhaseProfile phase_profile_from_string(const std::string &s)
    {
        if (s == "zero")
            return PhaseProfile::zero;
        if (s == "sensing_aligned")
            return PhaseProfile::sensing_aligned;
        throw std::invalid_argument("phase_profile: expected zero|sensing_aligned, got '" + s + "'");
    }

    void Scenario::validate() const
    {
        require(M >= 1, "M", "must be >= 1");
        require(N >= 1, "N", "must be >= 1");
        require(P >= 1, "P", "must be >= 1");
        geometry.validate();
        path_loss.validate();
        require(radar_cross_section > 0.0, "radar_cross_section", "must be > 0");
        if (rician_k)
            require(*rician_k >= 0.0 && std::isfinite(*rician_k), "rician_k", "must be finite and >= 0");
        require(corr_rho_bs >= 0.0 && corr_rho_bs < 1.0, "corr_rho_bs", "must lie in [0, 1)");
        require(corr_rho_ris >= 0.0 && corr_rho_ris < 1.0, "corr_rho_ris", "must lie in [0, 1)");
        require(epsilon >= 0.0 && epsilon <= 1.0, "epsilon", "must lie in [0, 1]");
        require(eta > 0.0, "eta", "must be > 0");
        require(P_trans > 0.0, "P_trans", "must be > 0");
        require(power_split >= 0.0 && power_split <= 1.0, "power_split", "must lie in [0, 1]");
        require(std::isfinite(sigma2_dbm_hz), "sigma2_dbm_hz", "must be finite");
        require(std::isfinite(sigma_y2_dbm_hz), "sigma_y2_dbm_hz", "must be finite");
        require(std::isfinite(sigma_r2_dbm_hz), "sigma_r2_dbm_hz", "must be finite");
        require(g_max > 0.0 && std::isfinite(g_max), "g_max", "must be > 0");
        require(L_pkt > 0.0, "L_pkt", "must be > 0");
    }

} // namespace isac
