#pragma once

#include <cstdint>
#include <random>

#include "coarse/cover.hpp"
#include "coarse/set_system.hpp"
#include "coarse/space.hpp"

namespace coarse {

using Rng = std::mt19937_64;

// Up to `max_sets` random boxes (and occasional sparse scatters) inside
// `box`, each with l_inf diameter <= bound and pairwise distance >= gap.
CoverFamily random_family(Rng& rng, const std::string& name, const Box& box, Coord gap,
                          Coord bound, std::size_t max_sets);

// Random nonempty-member set system over {1..universe}.
SetSystem random_set_system(Rng& rng, int universe, std::size_t members);

// Random SpaceSpec with n <= max_n and ambient dimension <= max_dim.
SpaceSpec random_space(Rng& rng, std::size_t max_n, std::size_t max_dim);

}  // namespace coarse
