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

#include "mubtrace/graph.h"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string_view>
#include <unordered_map>

#include "mubtrace/random_stream.h"

namespace mubtrace {

namespace {

std::int64_t parse_id(std::string_view tok, std::size_t line) {
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || ptr != tok.data() + tok.size()) {
        throw ParseError(line, "expected an integer vertex id, got '" + std::string(tok) + "'");
    }
    return v;
}

}  // namespace

Graph::Graph(std::size_t num_vertices, std::vector<Edge> edges) : num_vertices_(num_vertices) {
    edges_.reserve(edges.size());
    for (auto [u, v] : edges) {
        if (u >= num_vertices || v >= num_vertices) {
            throw std::invalid_argument("Graph: edge (" + std::to_string(u) + ", " + std::to_string(v) +
                                        ") out of range for " + std::to_string(num_vertices) + " vertices");
        }
        if (u == v) {
            continue;
        }
        edges_.emplace_back(std::min(u, v), std::max(u, v));
    }
    std::sort(edges_.begin(), edges_.end());
    edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
}

Graph parse_snap_edge_list(std::istream &in) {
    std::unordered_map<std::int64_t, std::size_t> labels;
    auto label = [&](std::int64_t id) {
        auto [it, inserted] = labels.emplace(id, labels.size());
        return it->second;
    };
    std::vector<Graph::Edge> edges;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        line_no++;
        std::string_view rest(line);
        std::vector<std::string_view> tokens;
        while (!rest.empty()) {
            auto start = std::find_if_not(rest.begin(), rest.end(), [](unsigned char c) {
                return std::isspace(c);
            });
            auto stop = std::find_if(start, rest.end(), [](unsigned char c) {
                return std::isspace(c);
            });
            if (start != stop) {
                tokens.emplace_back(&*start, static_cast<std::size_t>(stop - start));
            }
            rest = rest.substr(static_cast<std::size_t>(stop - rest.begin()));
        }
        if (tokens.empty() || tokens.front().front() == '#') {
            continue;
        }
        if (tokens.size() != 2) {
            throw ParseError(line_no, "expected two vertex ids, got " + std::to_string(tokens.size()) + " fields");
        }
        std::int64_t a = parse_id(tokens[0], line_no);
        std::int64_t b = parse_id(tokens[1], line_no);
        std::size_t u = label(a);
        std::size_t v = label(b);
        edges.emplace_back(u, v);
    }
    if (in.bad()) {
        throw std::runtime_error("I/O error while reading edge list");
    }
    return Graph(labels.size(), std::move(edges));
}

Graph read_snap_edge_list_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open '" + path + "'");
    }
    return parse_snap_edge_list(in);
}

void write_snap_edge_list(const Graph &g, std::ostream &out) {
    out << "# Undirected graph: " << g.num_vertices() << " vertices, " << g.num_edges() << " edges\n";
    // Reading the sorted edges back relabels in first-appearance order. When that order is not the
    // identity (or misses isolated vertices), pin the labels with self-loop lines, which the parser
    // registers and then drops.
    std::vector<bool> seen(g.num_vertices(), false);
    std::size_t next = 0;
    bool identity = true;
    for (auto [u, v] : g.edges()) {
        for (std::size_t w : {u, v}) {
            if (!seen[w]) {
                seen[w] = true;
                identity &= w == next++;
            }
        }
    }
    identity &= next == g.num_vertices();
    if (!identity) {
        for (std::size_t v = 0; v < g.num_vertices(); v++) {
            out << v << '\t' << v << '\n';
        }
    }
    for (auto [u, v] : g.edges()) {
        out << u << '\t' << v << '\n';
    }
}

SparseSymmetric adjacency_matrix(const Graph &g) {
    std::vector<SparseSymmetric::Entry> entries;
    entries.reserve(g.num_edges());
    for (auto [u, v] : g.edges()) {
        entries.push_back({u, v, 1.0});
    }
    return SparseSymmetric(g.num_vertices(), std::move(entries));
}

OraclePtr adjacency_oracle(const Graph &g) {
    return make_sparse_oracle(adjacency_matrix(g));
}

std::uint64_t exact_triangle_count(const Graph &g) {
    const std::size_t n = g.num_vertices();
    std::vector<std::size_t> degree(n, 0);
    for (auto [u, v] : g.edges()) {
        degree[u]++;
        degree[v]++;
    }
    // Orient each edge toward the endpoint of higher (degree, id) rank; every triangle is then
    // found exactly once, from its lowest-ranked vertex.
    auto before = [&](std::size_t a, std::size_t b) {
        return degree[a] != degree[b] ? degree[a] < degree[b] : a < b;
    };
    std::vector<std::vector<std::size_t>> forward(n);
    for (auto [u, v] : g.edges()) {
        if (before(u, v)) {
            forward[u].push_back(v);
        } else {
            forward[v].push_back(u);
        }
    }
    for (auto &adj : forward) {
        std::sort(adj.begin(), adj.end());
    }
    std::uint64_t count = 0;
    for (std::size_t u = 0; u < n; u++) {
        for (std::size_t v : forward[u]) {
            const auto &a = forward[u];
            const auto &b = forward[v];
            auto i = a.begin();
            auto j = b.begin();
            while (i != a.end() && j != b.end()) {
                if (*i < *j) {
                    ++i;
                } else if (*j < *i) {
                    ++j;
                } else {
                    count++;
                    ++i;
                    ++j;
                }
            }
        }
    }
    return count;
}

Graph erdos_renyi_graph(std::size_t num_vertices, double edge_probability, std::uint64_t seed) {
    if (!(edge_probability >= 0 && edge_probability <= 1)) {
        throw std::invalid_argument("erdos_renyi_graph: edge probability must lie in [0, 1]");
    }
    RandomStream stream(seed, 0);
    std::vector<Graph::Edge> edges;
    for (std::size_t u = 0; u < num_vertices; u++) {
        for (std::size_t v = u + 1; v < num_vertices; v++) {
            if (stream.uniform_closed_open() < edge_probability) {
                edges.emplace_back(u, v);
            }
        }
    }
    return Graph(num_vertices, std::move(edges));
}

TriangleEstimate estimate_triangles(const Graph &g, EstimatorKind kind, std::uint64_t samples, std::uint64_t seed,
                                    const EstimateOptions &options, std::optional<std::uint64_t> exact) {
    if (samples == 0) {
        throw std::invalid_argument("estimate_triangles: samples must be at least 1");
    }
    TriangleEstimate out;
    out.samples = samples;
    if (g.num_vertices() > 0) {
        TraceEstimate trace = estimate_trace(*power_oracle(adjacency_oracle(g), 3), kind, samples, seed, options);
        out.estimate = trace.mean / 6;
        out.sample_variance = trace.sample_variance / 36;
        out.total_bits = trace.total_bits;
    }
    if (exact && *exact > 0) {
        out.abs_rel_error = std::abs(out.estimate - static_cast<double>(*exact)) / static_cast<double>(*exact);
    }
    return out;
}

}  // namespace mubtrace
