#pragma once

#include "nogam/types.hpp"

#include <cstdint>
#include <iosfwd>
#include <utility>
#include <vector>

namespace nogam {

/// Directed acyclic graph over d nodes, dense adjacency storage.
/// adj(i,j) == true means edge i -> j. Generators only ever produce
/// acyclic graphs; mutation via add_edge does not re-check acyclicity,
/// callers that build graphs by hand should call is_acyclic().
class Dag {
public:
    Dag() = default;
    explicit Dag(int d);

    int node_count() const { return d_; }
    bool has_edge(int i, int j) const { return adj_[idx(i, j)] != 0; }
    void add_edge(int i, int j);
    void remove_edge(int i, int j) { adj_[idx(i, j)] = 0; }

    int edge_count() const;
    std::vector<std::pair<int, int>> edges() const;
    std::vector<int> parents(int j) const;
    std::vector<int> children(int i) const;
    bool is_acyclic() const;

    /// Nodes reachable from i along directed edges, i excluded.
    std::vector<int> descendants(int i) const;

    bool operator==(const Dag& other) const {
        return d_ == other.d_ && adj_ == other.adj_;
    }

private:
    int idx(int i, int j) const { return i * d_ + j; }
    int d_ = 0;
    std::vector<std::uint8_t> adj_;
};

/// Node permutation, sources first, leaves last.
struct Ordering {
    std::vector<int> perm;

    int size() const { return static_cast<int>(perm.size()); }
    bool is_valid_permutation() const;
    /// position[v] = index of node v in perm.
    std::vector<int> positions() const;
};

/// Erdos-Renyi style DAG: uniform node permutation, each forward pair kept
/// with probability p = min(1, density_mult * d / C(d,2)) so the expected
/// edge count is density_mult * d (capped when the target exceeds C(d,2)).
Dag sample_er(int d, int density_mult, Rng& rng);

/// Barabasi-Albert preferential attachment, m edges per added node,
/// oriented from earlier-attached to later-attached node.
Dag sample_sf(int d, int m, Rng& rng);

/// Kahn's algorithm, smallest-index-first tie-break. Throws CycleError.
Ordering topological_sort(const Dag& g);

/// True iff no edge of g points backwards in o.
bool is_consistent_ordering(const Dag& g, const Ordering& o);

/// The complete DAG admitted by an ordering: every node points to all
/// of its successors.
Dag full_dag_from_ordering(const Ordering& o);

// Edge-list text format: header "d=<n>", then one "i j" pair per line.
std::string to_edge_list(const Dag& g);
Dag dag_from_edge_list(std::istream& in);
Dag dag_from_edge_list_string(const std::string& text);

/// Dense 0/1 adjacency matrix, comma separated, one row per line.
std::string to_adjacency_csv(const Dag& g);

}  // namespace nogam
