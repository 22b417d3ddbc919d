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


#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <stdexcept>

namespace isac
{
    using Objective = std::function<double(double)>;

    /// Bracket and budget for a one-dimensional maximization.
    struct ScalarSearchSpec
    {
        double lo = 0.0;
        double hi = 1.0;
        std::optional<double> tol_x; // unset: 1e-6 * (hi - lo)
        std::size_t max_evals = 200;
        std::size_t starts = 1;      // equal sub-brackets, best result kept

        double tolerance() const noexcept;
        void validate() const;
    };

    struct ScalarResult
    {
        double x_star = 0.0;
        double f_star = 0.0;
        std::size_t evals = 0;
    };

    /// Raised when the objective returns NaN or an infinity.
    class NonFiniteObjective : public std::domain_error
    {
    public:
        explicit NonFiniteObjective(double x);
        double where() const noexcept { return x_; }

    private:
        double x_;
    };

    /// Safeguarded golden-section / parabolic-interpolation maximizer (Brent's
    /// scheme on -f). Both bracket ends are evaluated and compete with the
    /// interior search, so a boundary maximum is returned exactly. Every
    /// evaluation lies in [lo, hi] and at most max_evals are spent. Ties go to
    /// the smaller x.
    ScalarResult gsspi_maximize(const Objective &f, const ScalarSearchSpec &spec);

    /// Exhaustive search on n equally spaced points including both ends.
    /// Ties go to the smaller x.
    ScalarResult grid_maximize(const Objective &f, double lo, double hi, std::size_t n);

} // namespace isac
