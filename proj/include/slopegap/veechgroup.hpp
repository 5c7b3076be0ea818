#pragma once

#include "slopegap/origami.hpp"

#include <array>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

namespace slopegap {

/// SL(2,Z)-orbit of an origami up to relabelling. Node 0 is the base origami.
struct OrbitGraph {
    std::vector<Origami> nodes;  ///< canonical forms
    std::vector<std::vector<int>> keys;
    std::vector<std::array<int, 4>> next;  ///< indexed by Generator
    std::vector<int> lower_shear_inv;      ///< node of [[1,0],[-1,1]] applied
    std::vector<std::vector<std::int64_t>> horizontal_lengths;
    std::vector<int> parent;
    std::vector<Generator> parent_gen;  ///< nodes[i] = parent_gen[i] . nodes[parent[i]]

    int size() const { return static_cast<int>(nodes.size()); }
    int step(int node, Generator g) const { return next[static_cast<std::size_t>(node)][static_cast<std::size_t>(g)]; }
    /// Node index of an origami in the orbit, or -1.
    int find(const Origami& o) const;
    /// Word w in S, s, T, t with w . base = nodes[node] (letters act right to left).
    std::string word_to(int node) const;

    std::unordered_map<std::uint64_t, std::vector<int>> by_hash;
};

/// Breadth-first closure under S and T.
OrbitGraph sl2z_orbit(const Origami& o, std::size_t cap = 200000);

struct CuspData {
    int index = 0;
    std::string conjugator_word;
    int representative = 0;  ///< orbit node
    int width_w = 0;
    Rational L;
    Rational alpha;
    Rational n;
    bool has_minus_I = false;
    int eigenvalue_sign = 1;
    /// Cusp whose triangle is the half-turn image of this one, or -1.
    int mirror_of = -1;
    std::uint64_t repr_hash = 0;
};

/// One entry per T-cycle of the orbit graph.
std::vector<CuspData> compute_cusps(const OrbitGraph& g, const Origami& o);

}  // namespace slopegap
