#include "nogam/metrics.hpp"

#include <algorithm>
#include <array>
#include <utility>

namespace nogam {

int shd(const Dag& true_g, const Dag& est_g) {
    require(true_g.node_count() == est_g.node_count(), "shd: size mismatch");
    const int d = true_g.node_count();
    int dist = 0;
    for (int i = 0; i < d; ++i) {
        for (int j = i + 1; j < d; ++j) {
            const bool t = true_g.has_edge(i, j) || true_g.has_edge(j, i);
            const bool e = est_g.has_edge(i, j) || est_g.has_edge(j, i);
            if (t != e) {
                ++dist;  // missing or extra edge
            } else if (t && true_g.has_edge(i, j) != est_g.has_edge(i, j)) {
                ++dist;  // reversed edge counts once
            }
        }
    }
    return dist;
}

int d_top(const Ordering& order, const Dag& true_g) {
    require(order.size() == true_g.node_count(), "d_top: size mismatch");
    require(order.is_valid_permutation(), "d_top: not a permutation");
    const auto pos = order.positions();
    int count = 0;
    for (auto [i, j] : true_g.edges())
        if (pos[i] > pos[j]) ++count;
    return count;
}

bool d_separated(const Dag& g, int x, int y, const std::vector<int>& z) {
    const int d = g.node_count();
    require(x >= 0 && x < d && y >= 0 && y < d && x != y, "d_separated: bad node ids");
    std::vector<char> in_z(d, 0);
    for (int v : z) in_z[v] = 1;
    require(!in_z[x] && !in_z[y], "d_separated: endpoints cannot be conditioned on");

    // ancestors of the conditioning set, z included
    std::vector<char> anc_z = in_z;
    {
        std::vector<int> stack(z.begin(), z.end());
        while (!stack.empty()) {
            const int v = stack.back();
            stack.pop_back();
            for (int p : g.parents(v)) {
                if (!anc_z[p]) {
                    anc_z[p] = 1;
                    stack.push_back(p);
                }
            }
        }
    }

    // reachability over active trails; state = (node, arrived-from-child?)
    enum { kUp = 0, kDown = 1 };
    std::vector<std::array<char, 2>> visited(d, {0, 0});
    std::vector<std::pair<int, int>> stack = {{x, kUp}};
    while (!stack.empty()) {
        auto [v, dir] = stack.back();
        stack.pop_back();
        if (visited[v][dir]) continue;
        visited[v][dir] = 1;
        if (v == y) return false;

        if (dir == kUp && !in_z[v]) {
            for (int p : g.parents(v)) stack.emplace_back(p, kUp);
            for (int c : g.children(v)) stack.emplace_back(c, kDown);
        } else if (dir == kDown) {
            if (!in_z[v])
                for (int c : g.children(v)) stack.emplace_back(c, kDown);
            if (anc_z[v])  // collider (or its descendant) opened by conditioning
                for (int p : g.parents(v)) stack.emplace_back(p, kUp);
        }
    }
    return true;
}

namespace {

std::vector<char> desc_or_self_mask(const Dag& g, int v) {
    std::vector<char> mask(g.node_count(), 0);
    mask[v] = 1;
    for (int w : g.descendants(v)) mask[w] = 1;
    return mask;
}

}  // namespace

int sid(const Dag& true_g, const Dag& est_g) {
    require(true_g.node_count() == est_g.node_count(), "sid: size mismatch");
    require(true_g.is_acyclic(), "sid: true graph is cyclic");
    require(est_g.is_acyclic(), "sid: estimated graph is cyclic");
    const int d = true_g.node_count();

    std::vector<std::vector<char>> desc(d);
    for (int v = 0; v < d; ++v) desc[v] = desc_or_self_mask(true_g, v);

    int mistakes = 0;
    for (int i = 0; i < d; ++i) {
        const auto z = est_g.parents(i);
        std::vector<char> in_z(d, 0);
        for (int v : z) in_z[v] = 1;

        for (int j = 0; j < d; ++j) {
            if (j == i) continue;

            if (in_z[j]) {
                // est claims no effect of i on j; true iff j is not a descendant
                if (desc[i][j]) ++mistakes;
                continue;
            }

            // nodes (other than i) on a proper causal path i -> ... -> j
            std::vector<char> causal(d, 0);
            bool has_causal = false;
            for (int w = 0; w < d; ++w) {
                if (w != i && desc[i][w] && desc[w][j]) {
                    causal[w] = 1;
                    has_causal = true;
                }
            }

            // adjustment forbidden set: descendants (incl. self) of causal nodes
            bool touches_forbidden = false;
            if (has_causal) {
                for (int v : z) {
                    for (int w = 0; w < d && !touches_forbidden; ++w)
                        if (causal[w] && desc[w][v]) touches_forbidden = true;
                    if (touches_forbidden) break;
                }
            }
            if (touches_forbidden) {
                ++mistakes;
                continue;
            }

            // proper back-door graph: cut the first edge of every causal path
            Dag pbd = true_g;
            for (int c : true_g.children(i))
                if (causal[c]) pbd.remove_edge(i, c);

            if (!d_separated(pbd, i, j, z)) ++mistakes;
        }
    }
    return mistakes;
}

}  // namespace nogam
