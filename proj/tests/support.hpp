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

#include "isac/channel.hpp"
#include "isac/game.hpp"
#include "isac/linalg.hpp"

#include <random>

namespace isac::test
{
    inline CMatrix random_matrix(std::size_t r, std::size_t c, Rng &rng)
    {
        std::normal_distribution<double> n(0.0, 1.0);
        CMatrix m(r, c);
        for (auto &v : m.data())
            v = {n(rng), n(rng)};
        return m;
    }

    inline Game make_game(std::uint64_t seed, Scenario sc = {}, GameConfig cfg = {})
    {
        Rng rng(seed);
        ChannelSet ch = sample_channel_set(sc, rng);
        return Game(std::move(sc), std::move(cfg), std::move(ch));
    }

    inline double max_diff(const CMatrix &a, const CMatrix &b)
    {
        return (a - b).max_abs();
    }

} // namespace isac::test
