#include "nogam/graph.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <sstream>

namespace nogam {

Dag::Dag(int d) : d_(d), adj_(static_cast<size_t>(d) * d, 0) {
    require(d >= 1, "Dag: node count must be positive");
}

void Dag::add_edge(int i, int j) {
    require(i >= 0 && i < d_ && j >= 0 && j < d_, "Dag::add_edge: node out of range");
    require(i != j, "Dag::add_edge: self-loops not allowed");
    adj_[idx(i, j)] = 1;
}

int Dag::edge_count() const {
    int c = 0;
    for (auto v : adj_) c += v;
    return c;
}

std::vector<std::pair<int, int>> Dag::edges() const {
    std::vector<std::pair<int, int>> out;
    for (int i = 0; i < d_; ++i)
        for (int j = 0; j < d_; ++j)
            if (adj_[idx(i, j)]) out.emplace_back(i, j);
    return out;
}

std::vector<int> Dag::parents(int j) const {
    std::vector<int> out;
    for (int i = 0; i < d_; ++i)
        if (adj_[idx(i, j)]) out.push_back(i);
    return out;
}

std::vector<int> Dag::children(int i) const {
    std::vector<int> out;
    for (int j = 0; j < d_; ++j)
        if (adj_[idx(i, j)]) out.push_back(j);
    return out;
}

bool Dag::is_acyclic() const {
    try {
        topological_sort(*this);
        return true;
    } catch (const CycleError&) {
        return false;
    }
}

std::vector<int> Dag::descendants(int i) const {
    std::vector<int> out;
    std::vector<char> seen(d_, 0);
    std::vector<int> stack = {i};
    seen[i] = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int c = 0; c < d_; ++c) {
            if (adj_[idx(v, c)] && !seen[c]) {
                seen[c] = 1;
                out.push_back(c);
                stack.push_back(c);
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

bool Ordering::is_valid_permutation() const {
    std::vector<char> seen(perm.size(), 0);
    for (int v : perm) {
        if (v < 0 || v >= size() || seen[v]) return false;
        seen[v] = 1;
    }
    return true;
}

std::vector<int> Ordering::positions() const {
    std::vector<int> pos(perm.size());
    for (int k = 0; k < size(); ++k) pos[perm[k]] = k;
    return pos;
}

Dag sample_er(int d, int density_mult, Rng& rng) {
    require(d >= 1, "sample_er: d must be positive");
    require(density_mult >= 1, "sample_er: density_mult must be positive");
    Dag g(d);
    if (d == 1) return g;
    const double pairs = 0.5 * d * (d - 1);
    const double p = std::min(1.0, static_cast<double>(density_mult) * d / pairs);

    std::vector<int> perm(d);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);

    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int a = 0; a < d; ++a)
        for (int b = a + 1; b < d; ++b)
            if (unit(rng) < p) g.add_edge(perm[a], perm[b]);
    return g;
}

Dag sample_sf(int d, int m, Rng& rng) {
    require(d >= 1, "sample_sf: d must be positive");
    require(m >= 1 && m < d, "sample_sf: need 1 <= m < d");
    Dag g(d);

    // Preferential attachment via the repeated-endpoints trick; each new
    // node attaches to m distinct targets drawn with probability
    // proportional to degree (uniform over the seed nodes at the start).
    std::vector<int> repeated;
    std::vector<int> targets(m);
    std::iota(targets.begin(), targets.end(), 0);
    for (int t = m; t < d; ++t) {
        for (int u : targets) {
            g.add_edge(u, t);  // older node -> newer node
            repeated.push_back(u);
            repeated.push_back(t);
        }
        if (t + 1 == d) break;
        std::vector<char> picked(d, 0);
        int got = 0;
        std::uniform_int_distribution<size_t> pick(0, repeated.size() - 1);
        while (got < m) {
            int u = repeated[pick(rng)];
            if (!picked[u]) {
                picked[u] = 1;
                targets[got++] = u;
            }
        }
    }
    return g;
}

Ordering topological_sort(const Dag& g) {
    const int d = g.node_count();
    std::vector<int> indeg(d, 0);
    for (auto [i, j] : g.edges()) {
        (void)i;
        ++indeg[j];
    }
    std::priority_queue<int, std::vector<int>, std::greater<int>> ready;
    for (int v = 0; v < d; ++v)
        if (indeg[v] == 0) ready.push(v);

    Ordering o;
    o.perm.reserve(d);
    while (!ready.empty()) {
        int v = ready.top();
        ready.pop();
        o.perm.push_back(v);
        for (int c : g.children(v))
            if (--indeg[c] == 0) ready.push(c);
    }
    if (static_cast<int>(o.perm.size()) != d)
        throw CycleError("topological_sort: graph contains a cycle");
    return o;
}

bool is_consistent_ordering(const Dag& g, const Ordering& o) {
    require(o.size() == g.node_count(), "is_consistent_ordering: size mismatch");
    require(o.is_valid_permutation(), "is_consistent_ordering: not a permutation");
    const auto pos = o.positions();
    for (auto [i, j] : g.edges())
        if (pos[i] > pos[j]) return false;
    return true;
}

Dag full_dag_from_ordering(const Ordering& o) {
    require(o.size() >= 1, "full_dag_from_ordering: empty ordering");
    require(o.is_valid_permutation(), "full_dag_from_ordering: not a permutation");
    Dag g(o.size());
    for (int a = 0; a < o.size(); ++a)
        for (int b = a + 1; b < o.size(); ++b) g.add_edge(o.perm[a], o.perm[b]);
    return g;
}

std::string to_edge_list(const Dag& g) {
    std::ostringstream out;
    out << "d=" << g.node_count() << "\n";
    for (auto [i, j] : g.edges()) out << i << " " << j << "\n";
    return out.str();
}

Dag dag_from_edge_list(std::istream& in) {
    std::string header;
    if (!std::getline(in, header) || header.rfind("d=", 0) != 0)
        throw ParseError("edge list: expected header 'd=<n>'");
    int d = 0;
    try {
        d = std::stoi(header.substr(2));
    } catch (const std::exception&) {
        throw ParseError("edge list: bad node count in header");
    }
    Dag g(d);
    std::string line;
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::istringstream ls(line);
        int i, j;
        if (!(ls >> i >> j))
            throw ParseError("edge list: bad edge on line " + std::to_string(lineno));
        g.add_edge(i, j);
    }
    if (!g.is_acyclic()) throw CycleError("edge list: graph is not acyclic");
    return g;
}

Dag dag_from_edge_list_string(const std::string& text) {
    std::istringstream in(text);
    return dag_from_edge_list(in);
}

std::string to_adjacency_csv(const Dag& g) {
    std::ostringstream out;
    const int d = g.node_count();
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            if (j) out << ",";
            out << (g.has_edge(i, j) ? 1 : 0);
        }
        out << "\n";
    }
    return out.str();
}

}  // namespace nogam
