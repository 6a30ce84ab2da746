#pragma once

#include <string>
#include <vector>

#include "tbembed/embedding.hpp"

namespace tbembed::embed {

struct CounterexampleReport {
    std::string layer;
    // states v1..v4 with eps(v1) + eps(v2) + eps(v3) = eps(v4)
    std::vector<BitVector> states;
    bool relation_holds = false;
    // For each image eps(L v_i), the eps' positions of the blocks listed in
    // `blocks` (0 stands for the zero element, i for g^i).
    std::vector<std::size_t> blocks;
    std::vector<std::vector<std::size_t>> image_positions;
    std::size_t offending_block = 0;
    std::size_t offending_weight = 0;
    bool sum_is_admissible = true;
    bool violation = false;
};

CounterexampleReport verify_mc_counterexample();
CounterexampleReport verify_player_counterexample();

}  // namespace tbembed::embed
