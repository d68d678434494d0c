#pragma once

#include "nogam/graph.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace nogam {

struct EvalReport {
    int shd = 0;
    int sid = 0;
    int d_top = 0;
    std::uint64_t seed = 0;
    std::string config_hash;
};

/// Structural Hamming Distance over unordered pairs: +1 when exactly one
/// graph connects the pair (either direction), +1 when both do but reversed.
int shd(const Dag& true_g, const Dag& est_g);

/// Structural Intervention Distance: ordered pairs (i,j) whose parent set in
/// est_g is not a valid adjustment set for the effect of i on j in true_g.
int sid(const Dag& true_g, const Dag& est_g);

/// True edges i->j with i placed after j in the order; 0 iff consistent.
int d_top(const Ordering& order, const Dag& true_g);

/// Algorithmic d-separation (reachability over legal walks): is x d-separated
/// from y given z in g? Exposed because sid builds on it.
bool d_separated(const Dag& g, int x, int y, const std::vector<int>& z);

}  // namespace nogam
