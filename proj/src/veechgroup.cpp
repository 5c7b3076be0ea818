#include "slopegap/veechgroup.hpp"

#include "slopegap/error.hpp"

#include <algorithm>

namespace slopegap {

int OrbitGraph::find(const Origami& o) const {
    std::vector<int> key = canonical_key(o);
    auto it = by_hash.find(key_hash(key));
    if (it == by_hash.end()) return -1;
    for (int idx : it->second)
        if (keys[static_cast<std::size_t>(idx)] == key) return idx;
    return -1;
}

std::string OrbitGraph::word_to(int node) const {
    std::string word;
    while (node != 0) {
        const char letters[] = {'S', 's', 'T', 't'};
        word += letters[static_cast<int>(parent_gen[static_cast<std::size_t>(node)])];
        node = parent[static_cast<std::size_t>(node)];
    }
    return word;
}

OrbitGraph sl2z_orbit(const Origami& o, std::size_t cap) {
    OrbitGraph g;
    auto add = [&](const Origami& x, int par, Generator gen) {
        Origami c = canonical_form(x);
        std::vector<int> key = canonical_key(c);
        int idx = g.size();
        g.by_hash[key_hash(key)].push_back(idx);
        g.nodes.push_back(std::move(c));
        g.keys.push_back(std::move(key));
        g.next.push_back({-1, -1, -1, -1});
        g.parent.push_back(par);
        g.parent_gen.push_back(gen);
        return idx;
    };
    add(o, -1, Generator::S);
    for (int i = 0; i < g.size(); ++i) {
        for (Generator gen : {Generator::S, Generator::Sinv, Generator::T, Generator::Tinv}) {
            Origami img = sl2z_apply(gen, g.nodes[static_cast<std::size_t>(i)]);
            int j = g.find(img);
            if (j < 0) {
                if (static_cast<std::size_t>(g.size()) >= cap) throw InvariantError("SL(2,Z) orbit exceeds cap");
                j = add(img, i, gen);
            }
            g.next[static_cast<std::size_t>(i)][static_cast<std::size_t>(gen)] = j;
        }
    }
    g.lower_shear_inv.resize(g.nodes.size());
    g.horizontal_lengths.resize(g.nodes.size());
    for (int i = 0; i < g.size(); ++i) {
        int x = g.step(i, Generator::Sinv);
        x = g.step(x, Generator::T);
        x = g.step(x, Generator::S);
        g.lower_shear_inv[static_cast<std::size_t>(i)] = x;
        g.horizontal_lengths[static_cast<std::size_t>(i)] = horizontal_saddle_lengths(g.nodes[static_cast<std::size_t>(i)]);
    }
    return g;
}

std::vector<CuspData> compute_cusps(const OrbitGraph& g, const Origami& o) {
    if (g.size() == 0 || g.find(o) != 0) throw InvariantError("orbit graph does not belong to this origami");
    const bool minus_I = equivalent(rotate_half_turn(o), o);

    std::vector<int> cycle_of(static_cast<std::size_t>(g.size()), -1);
    std::vector<CuspData> cusps;
    for (int start = 0; start < g.size(); ++start) {
        if (cycle_of[static_cast<std::size_t>(start)] != -1) continue;
        CuspData c;
        c.index = static_cast<int>(cusps.size());
        c.representative = start;
        int x = start;
        do {
            cycle_of[static_cast<std::size_t>(x)] = c.index;
            ++c.width_w;
            x = g.step(x, Generator::T);
        } while (x != start);
        c.conjugator_word = g.word_to(start);
        const auto& lengths = g.horizontal_lengths[static_cast<std::size_t>(start)];
        if (lengths.empty()) throw InvariantError("cusp representative has no horizontal saddle connection");
        c.L = Rational(static_cast<long>(lengths.front()));
        c.has_minus_I = minus_I;
        c.repr_hash = key_hash(g.keys[static_cast<std::size_t>(start)]);
        cusps.push_back(c);
    }
    for (auto& c : cusps) {
        const Rational w(c.width_w);
        const Rational L2 = c.L * c.L;
        c.n = w / L2;
        c.alpha = c.n;
        c.eigenvalue_sign = 1;
        if (c.has_minus_I) continue;
        int rotated = g.find(rotate_half_turn(g.nodes[static_cast<std::size_t>(c.representative)]));
        if (rotated < 0) throw InvariantError("half-turn image left the orbit");
        int partner = cycle_of[static_cast<std::size_t>(rotated)];
        if (partner == c.index) {
            // -T^(w/2) is the primitive parabolic.
            if (c.width_w % 2 != 0) throw InvariantError("odd width for a cusp with eigenvalue -1");
            c.eigenvalue_sign = -1;
            c.alpha = c.n / 2;
        } else if (partner < c.index) {
            c.mirror_of = partner;
        }
    }
    return cusps;
}

}  // namespace slopegap
