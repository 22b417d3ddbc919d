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


#include "isac/optimizer.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <string>

namespace isac
{
    namespace
    {
        constexpr double golden = 0.38196601125010515; // (3 - sqrt 5) / 2

        struct Counted
        {
            const Objective &f;
            std::size_t evals = 0;

            double operator()(double x)
            {
                const double v = f(x);
                ++evals;
                if (!std::isfinite(v))
                    throw NonFiniteObjective(x);
                return v;
            }
        };

        void keep_better(ScalarResult &best, double x, double fx)
        {
            if (fx > best.f_star || (fx == best.f_star && x < best.x_star))
            {
                best.x_star = x;
                best.f_star = fx;
            }
        }

        // Brent's localmin on -f over the open interval (a, b).
        ScalarResult brent(Counted &F, double a, double b, double tol_abs, std::size_t budget)
        {
            const double eps_rel = 4.0 * DBL_EPSILON;
            double x = a + golden * (b - a);
            double w = x, v = x;
            double fx = -F(x), fw = fx, fv = fx;
            std::size_t used = 1;
            double d = 0.0, e = 0.0;

            while (used < budget)
            {
                const double m = 0.5 * (a + b);
                const double tol = eps_rel * std::abs(x) + tol_abs;
                const double t2 = 2.0 * tol;
                if (std::abs(x - m) <= t2 - 0.5 * (b - a))
                    break;

                bool golden_step = true;
                if (std::abs(e) > tol)
                {
                    double r = (x - w) * (fx - fv);
                    double q = (x - v) * (fx - fw);
                    double p = (x - v) * q - (x - w) * r;
                    q = 2.0 * (q - r);
                    if (q > 0.0)
                        p = -p;
                    else
                        q = -q;
                    r = e;
                    e = d;
                    if (std::abs(p) < std::abs(0.5 * q * r) && p > q * (a - x) && p < q * (b - x))
                    {
                        d = p / q;
                        const double u = x + d;
                        if (u - a < t2 || b - u < t2)
                            d = x < m ? tol : -tol;
                        golden_step = false;
                    }
                }
                if (golden_step)
                {
                    e = (x < m ? b : a) - x;
                    d = golden * e;
                }

                const double u = std::abs(d) >= tol ? x + d : x + (d > 0.0 ? tol : -tol);
                const double fu = -F(u);
                ++used;

                if (fu <= fx)
                {
                    (u < x ? b : a) = x;
                    v = w, fv = fw;
                    w = x, fw = fx;
                    x = u, fx = fu;
                }
                else
                {
                    (u < x ? a : b) = u;
                    if (fu <= fw || w == x)
                    {
                        v = w, fv = fw;
                        w = u, fw = fu;
                    }
                    else if (fu <= fv || v == x || v == w)
                    {
                        v = u, fv = fu;
                    }
                }
            }
            return {x, -fx, used};
        }

    } // namespace

    NonFiniteObjective::NonFiniteObjective(double x)
        : std::domain_error("objective is not finite at x = " + std::to_string(x)), x_(x)
    {
    }

    double ScalarSearchSpec::tolerance() const noexcept
    {
        return tol_x.value_or(1e-6 * (hi - lo));
    }

    void ScalarSearchSpec::validate() const
    {
        if (!std::isfinite(lo) || !std::isfinite(hi) || lo > hi)
            throw std::invalid_argument("ScalarSearchSpec: need finite lo <= hi");
        if (max_evals == 0)
            throw std::invalid_argument("ScalarSearchSpec: max_evals must be >= 1");
        if (starts == 0)
            throw std::invalid_argument("ScalarSearchSpec: starts must be >= 1");
        if (tol_x && !(*tol_x > 0.0))
            throw std::invalid_argument("ScalarSearchSpec: tol_x must be > 0");
    }

    ScalarResult gsspi_maximize(const Objective &f, const ScalarSearchSpec &spec)
    {
        spec.validate();
        Counted F{f};
        const double lo = spec.lo, hi = spec.hi;

        if (lo == hi || spec.max_evals < 3)
        {
            ScalarResult best{lo, F(lo), 0};
            if (lo != hi && spec.max_evals == 2)
                keep_better(best, hi, F(hi));
            best.evals = F.evals;
            return best;
        }

        ScalarResult best{lo, F(lo), 0};
        keep_better(best, hi, F(hi));

        const std::size_t k = std::min(spec.starts, spec.max_evals - 2);
        const std::size_t share = (spec.max_evals - 2) / k;
        const double tol_abs = std::max(spec.tolerance(), 0.0) / 3.0;
        const double width = (hi - lo) / static_cast<double>(k);
        for (std::size_t j = 0; j < k; ++j)
        {
            const double a = lo + width * static_cast<double>(j);
            const double b = j + 1 == k ? hi : lo + width * static_cast<double>(j + 1);
            const ScalarResult r = brent(F, a, b, tol_abs, share);
            keep_better(best, r.x_star, r.f_star);
        }
        best.evals = F.evals;
        return best;
    }

    ScalarResult grid_maximize(const Objective &f, double lo, double hi, std::size_t n)
    {
        if (n == 0 || !(lo <= hi))
            throw std::invalid_argument("grid_maximize: need n >= 1 and lo <= hi");
        Counted F{f};
        ScalarResult best{lo, F(lo), 0};
        for (std::size_t i = 1; i < n; ++i)
        {
            const double x = i + 1 == n ? hi : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
            const double fx = F(x);
            if (fx > best.f_star)
                best = {x, fx, 0};
        }
        best.evals = F.evals;
        return best;
    }

} // namespace isac
