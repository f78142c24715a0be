// Copyright 2026 The mubtrace Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MUBTRACE_GRAPH_H
#define MUBTRACE_GRAPH_H

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mubtrace/estimators.h"
#include "mubtrace/oracle.h"
#include "mubtrace/parse_error.h"

namespace mubtrace {

/// Simple undirected graph on vertices [0, num_vertices).
class Graph {
   public:
    using Edge = std::pair<std::size_t, std::size_t>;

    Graph() = default;
    /// Orients every edge as (min, max), drops self-loops and duplicates, and sorts.
    /// Throws std::invalid_argument on an endpoint >= num_vertices.
    Graph(std::size_t num_vertices, std::vector<Edge> edges);

    std::size_t num_vertices() const {
        return num_vertices_;
    }
    std::size_t num_edges() const {
        return edges_.size();
    }
    /// Sorted, each with first < second.
    const std::vector<Edge> &edges() const {
        return edges_;
    }

    bool operator==(const Graph &) const = default;

   private:
    std::size_t num_vertices_ = 0;
    std::vector<Edge> edges_;
};

/// SNAP plain-text edge list: '#' lines are comments, every other non-blank line is two integer ids.
/// Ids are relabeled to [0, V) in order of first appearance; direction is ignored, and self-loops and
/// duplicate edges are dropped (a vertex seen only in a self-loop is kept, isolated).
/// Throws ParseError naming the offending line.
Graph parse_snap_edge_list(std::istream &in);
Graph read_snap_edge_list_file(const std::string &path);

/// Writes `g` so that parse_snap_edge_list reads back an identical graph, including isolated
/// vertices and labels.
void write_snap_edge_list(const Graph &g, std::ostream &out);

SparseSymmetric adjacency_matrix(const Graph &g);
/// 0/1 symmetric adjacency oracle with matvec and a zero diagonal.
OraclePtr adjacency_oracle(const Graph &g);

/// Exact count via the forward (degree-ordered neighbor intersection) algorithm.
std::uint64_t exact_triangle_count(const Graph &g);

/// G(n, p) with each pair decided by one 53-bit uniform from RandomStream(seed, 0).
Graph erdos_renyi_graph(std::size_t num_vertices, double edge_probability, std::uint64_t seed);

struct TriangleEstimate {
    double estimate = 0;
    std::uint64_t samples = 0;
    /// Sample variance of the single-shot triangle estimates Tr-shot / 6.
    double sample_variance = 0;
    std::uint64_t total_bits = 0;
    /// |estimate - exact| / exact, when an exact count was supplied and is nonzero.
    std::optional<double> abs_rel_error;
};

/// estimate_trace(power_oracle(adjacency_oracle(g), 3), ...).mean / 6. Each sample costs two sparse
/// matvecs and one sparse quadratic form. A graph with no vertices estimates 0 exactly.
TriangleEstimate estimate_triangles(const Graph &g, EstimatorKind kind, std::uint64_t samples, std::uint64_t seed,
                                    const EstimateOptions &options = {},
                                    std::optional<std::uint64_t> exact = std::nullopt);

}  // namespace mubtrace

#endif
