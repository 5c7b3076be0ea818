#include "slopegap/origami.hpp"

#include "slopegap/error.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <numeric>
#include <sstream>

namespace slopegap {

Permutation::Permutation(std::vector<int> images) : images_(std::move(images)) {
    const int n = size();
    std::vector<char> seen(images_.size(), 0);
    for (int x : images_) {
        if (x < 0 || x >= n) throw InputError("permutation image out of range");
        if (seen[static_cast<std::size_t>(x)]) throw InputError("permutation is not a bijection");
        seen[static_cast<std::size_t>(x)] = 1;
    }
}

Permutation Permutation::identity(int n) {
    std::vector<int> im(static_cast<std::size_t>(n));
    std::iota(im.begin(), im.end(), 0);
    return Permutation(std::move(im));
}

Permutation Permutation::inverse() const {
    std::vector<int> inv(images_.size());
    for (int i = 0; i < size(); ++i) inv[static_cast<std::size_t>(images_[static_cast<std::size_t>(i)])] = i;
    return Permutation(std::move(inv));
}

bool Permutation::is_identity() const {
    for (int i = 0; i < size(); ++i)
        if ((*this)(i) != i) return false;
    return true;
}

std::string Permutation::to_cycles() const {
    std::string out;
    std::vector<char> seen(images_.size(), 0);
    for (int i = 0; i < size(); ++i) {
        if (seen[static_cast<std::size_t>(i)] || (*this)(i) == i) continue;
        out += '(';
        int j = i;
        bool first = true;
        while (!seen[static_cast<std::size_t>(j)]) {
            seen[static_cast<std::size_t>(j)] = 1;
            if (!first) out += ' ';
            out += std::to_string(j + 1);
            first = false;
            j = (*this)(j);
        }
        out += ')';
    }
    return out.empty() ? "()" : out;
}

Permutation operator*(const Permutation& a, const Permutation& b) {
    std::vector<int> im(static_cast<std::size_t>(b.size()));
    for (int i = 0; i < b.size(); ++i) im[static_cast<std::size_t>(i)] = a(b(i));
    return Permutation(std::move(im));
}

namespace {

bool transitive(const Permutation& h, const Permutation& v) {
    const int n = h.size();
    if (n == 0) return false;
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int count = 1;
    while (!stack.empty()) {
        int x = stack.back();
        stack.pop_back();
        for (int y : {h(x), v(x)}) {
            if (!seen[static_cast<std::size_t>(y)]) {
                seen[static_cast<std::size_t>(y)] = 1;
                ++count;
                stack.push_back(y);
            }
        }
    }
    return count == n;
}

std::string trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

using Kind = OrigamiParseError::Kind;

Permutation parse_cycles(const std::string& text, int n, char name) {
    std::vector<int> im(static_cast<std::size_t>(n), -1);
    std::size_t i = 0;
    auto fail = [&](const std::string& why) -> OrigamiParseError {
        return OrigamiParseError(Kind::Malformed, std::string(1, name) + ": " + why);
    };
    auto skip_ws = [&] {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    };
    skip_ws();
    if (i == text.size()) throw fail("empty cycle list");
    while (true) {
        skip_ws();
        if (i == text.size()) break;
        if (text[i] != '(') throw fail("expected '('");
        ++i;
        std::vector<int> cycle;
        while (true) {
            while (i < text.size() && (std::isspace(static_cast<unsigned char>(text[i])) || text[i] == ',')) ++i;
            if (i == text.size()) throw fail("unterminated cycle");
            if (text[i] == ')') {
                ++i;
                break;
            }
            if (!std::isdigit(static_cast<unsigned char>(text[i]))) throw fail("unexpected character");
            long long value = 0;
            while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
                value = value * 10 + (text[i] - '0');
                if (value > n) throw fail("square index out of range");
                ++i;
            }
            if (value < 1) throw fail("square index out of range");
            cycle.push_back(static_cast<int>(value - 1));
        }
        for (std::size_t k = 0; k < cycle.size(); ++k) {
            int from = cycle[k];
            int to = cycle[(k + 1) % cycle.size()];
            if (im[static_cast<std::size_t>(from)] != -1)
                throw OrigamiParseError(Kind::NotBijective,
                                        std::string(1, name) + ": square " + std::to_string(from + 1) + " repeated");
            im[static_cast<std::size_t>(from)] = to;
        }
    }
    for (int k = 0; k < n; ++k)
        if (im[static_cast<std::size_t>(k)] == -1) im[static_cast<std::size_t>(k)] = k;
    return Permutation(std::move(im));
}

}  // namespace

Origami::Origami(Permutation h, Permutation v) : h_(std::move(h)), v_(std::move(v)) {
    if (h_.size() != v_.size()) throw InputError("h and v act on different square counts");
    if (h_.size() == 0) throw InputError("origami has no squares");
    if (!transitive(h_, v_)) throw InputError("origami is disconnected");
}

Origami Origami::torus() { return Origami(Permutation::identity(1), Permutation::identity(1)); }

Origami parse_origami(std::string_view text) {
    int n = -1;
    std::string htext, vtext;
    bool have_h = false, have_v = false;
    std::istringstream in{std::string(text)};
    std::string raw;
    while (std::getline(in, raw)) {
        auto hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        std::string line = trim(raw);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos) throw OrigamiParseError(Kind::Malformed, "expected key=value: " + line);
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key == "n") {
            if (value.empty() || !std::all_of(value.begin(), value.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }) || value.size() > 6)
                throw OrigamiParseError(Kind::Malformed, "bad square count: " + value);
            n = std::stoi(value);
            if (n < 1) throw OrigamiParseError(Kind::Malformed, "square count must be positive");
        } else if (key == "h") {
            htext = value;
            have_h = true;
        } else if (key == "v") {
            vtext = value;
            have_v = true;
        } else {
            throw OrigamiParseError(Kind::Malformed, "unknown key: " + key);
        }
    }
    if (n < 0 || !have_h || !have_v) throw OrigamiParseError(Kind::Malformed, "need n=, h= and v= lines");
    Permutation h = parse_cycles(htext, n, 'h');
    Permutation v = parse_cycles(vtext, n, 'v');
    if (!transitive(h, v)) throw OrigamiParseError(Kind::Disconnected, "surface is disconnected");
    return Origami(std::move(h), std::move(v));
}

Origami load_origami(const std::filesystem::path& path) {
    std::ifstream f(path);
    if (!f) throw InputError("cannot open " + path.string());
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_origami(ss.str());
}

std::string format_origami(const Origami& o) {
    return "n=" + std::to_string(o.size()) + "\nh=" + o.h().to_cycles() + "\nv=" + o.v().to_cycles() + "\n";
}

int CornerData::singular_count() const {
    return static_cast<int>(std::count_if(classes.begin(), classes.end(), [](const VertexClass& c) { return c.singular; }));
}

CornerData singular_corners(const Origami& o) {
    const int n = o.size();
    const Permutation& h = o.h();
    const Permutation& v = o.v();
    // Counter-clockwise rotation of lower-left corners around their common point.
    Permutation rot = v * h * v.inverse() * h.inverse();
    CornerData out;
    out.class_of_square.assign(static_cast<std::size_t>(n), -1);
    for (int i = 0; i < n; ++i) {
        if (out.class_of_square[static_cast<std::size_t>(i)] != -1) continue;
        VertexClass c;
        c.id = static_cast<int>(out.classes.size());
        int j = i;
        do {
            out.class_of_square[static_cast<std::size_t>(j)] = c.id;
            c.squares.push_back(j);
            j = rot(j);
        } while (j != i);
        c.angle_quarter_turns = 4 * static_cast<int>(c.squares.size());
        c.singular = c.squares.size() > 1;
        c.marked = c.singular;
        out.classes.push_back(std::move(c));
    }
    if (out.singular_count() == 0) out.classes[static_cast<std::size_t>(out.class_of_square[0])].marked = true;
    out.marked_square.assign(static_cast<std::size_t>(n), 0);
    for (int i = 0; i < n; ++i)
        out.marked_square[static_cast<std::size_t>(i)] = out.classes[static_cast<std::size_t>(out.class_of_square[static_cast<std::size_t>(i)])].marked;
    return out;
}

Rational CylinderDecomposition::area() const {
    Rational a = 0;
    for (const auto& c : cylinders) a += c.circumference * c.height;
    return a;
}

CylinderDecomposition horizontal_cylinders(const Origami& o) {
    const int n = o.size();
    CornerData corners = singular_corners(o);
    std::vector<int> row(static_cast<std::size_t>(n), -1);
    std::vector<int> row_len;
    std::vector<char> row_marked;
    for (int i = 0; i < n; ++i) {
        if (row[static_cast<std::size_t>(i)] != -1) continue;
        int id = static_cast<int>(row_len.size());
        int len = 0;
        bool marked = false;
        int j = i;
        do {
            row[static_cast<std::size_t>(j)] = id;
            marked = marked || corners.marked_square[static_cast<std::size_t>(j)];
            ++len;
            j = o.h()(j);
        } while (j != i);
        row_len.push_back(len);
        row_marked.push_back(marked);
    }
    std::vector<int> row_start(row_len.size(), -1);
    for (int i = 0; i < n; ++i)
        if (row_start[static_cast<std::size_t>(row[static_cast<std::size_t>(i)])] == -1) row_start[static_cast<std::size_t>(row[static_cast<std::size_t>(i)])] = i;

    CylinderDecomposition out;
    int covered = 0;
    for (std::size_t r = 0; r < row_len.size(); ++r) {
        if (!row_marked[r]) continue;
        int height = 1;
        int sq = o.v()(row_start[r]);
        while (!row_marked[static_cast<std::size_t>(row[static_cast<std::size_t>(sq)])]) {
            ++height;
            sq = o.v()(sq);
        }
        out.cylinders.push_back({Rational(row_len[r]), Rational(height)});
        covered += row_len[r] * height;
    }
    if (covered != n) throw InvariantError("horizontal cylinders do not cover the surface");
    return out;
}

std::vector<std::int64_t> horizontal_saddle_lengths(const Origami& o) {
    CornerData corners = singular_corners(o);
    std::vector<std::int64_t> lengths;
    for (int i = 0; i < o.size(); ++i) {
        if (!corners.marked_square[static_cast<std::size_t>(i)]) continue;
        std::int64_t k = 1;
        int j = o.h()(i);
        while (!corners.marked_square[static_cast<std::size_t>(j)]) {
            j = o.h()(j);
            ++k;
        }
        lengths.push_back(k);
    }
    std::sort(lengths.begin(), lengths.end());
    lengths.erase(std::unique(lengths.begin(), lengths.end()), lengths.end());
    return lengths;
}

Origami sl2z_apply(Generator g, const Origami& o) {
    const Permutation& h = o.h();
    const Permutation& v = o.v();
    switch (g) {
        case Generator::S: return Origami(v.inverse(), h);
        case Generator::Sinv: return Origami(v, h.inverse());
        case Generator::T: return Origami(h, v * h.inverse());
        case Generator::Tinv: return Origami(h, v * h);
    }
    throw InvariantError("unknown generator");
}

Origami sl2z_apply(std::string_view word, const Origami& o) {
    Origami cur = o;
    for (auto it = word.rbegin(); it != word.rend(); ++it) {
        switch (*it) {
            case 'S': cur = sl2z_apply(Generator::S, cur); break;
            case 's': cur = sl2z_apply(Generator::Sinv, cur); break;
            case 'T': cur = sl2z_apply(Generator::T, cur); break;
            case 't': cur = sl2z_apply(Generator::Tinv, cur); break;
            default: throw InputError(std::string("bad generator letter: ") + *it);
        }
    }
    return cur;
}

Origami rotate_half_turn(const Origami& o) { return Origami(o.h().inverse(), o.v().inverse()); }

namespace {

/// Relabelling of `o` by breadth-first search from `start`; returns the key h' ++ v'.
std::vector<int> relabel_key(const Origami& o, int start) {
    const int n = o.size();
    std::vector<int> label(static_cast<std::size_t>(n), -1);
    std::vector<int> order;
    order.reserve(static_cast<std::size_t>(n));
    label[static_cast<std::size_t>(start)] = 0;
    order.push_back(start);
    for (std::size_t q = 0; q < order.size(); ++q) {
        int x = order[q];
        for (int y : {o.h()(x), o.v()(x)}) {
            if (label[static_cast<std::size_t>(y)] == -1) {
                label[static_cast<std::size_t>(y)] = static_cast<int>(order.size());
                order.push_back(y);
            }
        }
    }
    std::vector<int> key(static_cast<std::size_t>(2 * n));
    for (int k = 0; k < n; ++k) {
        key[static_cast<std::size_t>(k)] = label[static_cast<std::size_t>(o.h()(order[static_cast<std::size_t>(k)]))];
        key[static_cast<std::size_t>(n + k)] = label[static_cast<std::size_t>(o.v()(order[static_cast<std::size_t>(k)]))];
    }
    return key;
}

}  // namespace

std::vector<int> canonical_key(const Origami& o) {
    std::vector<int> best;
    for (int s = 0; s < o.size(); ++s) {
        std::vector<int> key = relabel_key(o, s);
        if (best.empty() || key < best) best = std::move(key);
    }
    return best;
}

Origami canonical_form(const Origami& o) {
    std::vector<int> key = canonical_key(o);
    const auto n = static_cast<std::size_t>(o.size());
    return Origami(Permutation(std::vector<int>(key.begin(), key.begin() + static_cast<long>(n))),
                   Permutation(std::vector<int>(key.begin() + static_cast<long>(n), key.end())));
}

bool equivalent(const Origami& a, const Origami& b) {
    return a.size() == b.size() && canonical_key(a) == canonical_key(b);
}

std::uint64_t key_hash(const std::vector<int>& key) {
    std::uint64_t hash = 1469598103934665603ULL;
    for (int x : key) {
        auto u = static_cast<std::uint32_t>(x);
        for (int byte = 0; byte < 4; ++byte) {
            hash ^= (u >> (8 * byte)) & 0xffU;
            hash *= 1099511628211ULL;
        }
    }
    return hash;
}

std::vector<Origami> all_origamis(int n) {
    if (n < 1 || n > 6) throw InputError("all_origamis supports 1..6 squares");
    std::vector<int> base(static_cast<std::size_t>(n));
    std::iota(base.begin(), base.end(), 0);
    std::vector<std::vector<int>> perms;
    do perms.push_back(base);
    while (std::next_permutation(base.begin(), base.end()));

    std::vector<std::vector<int>> keys;
    std::vector<Origami> out;
    for (const auto& hp : perms) {
        for (const auto& vp : perms) {
            Permutation h(hp), v(vp);
            if (!transitive(h, v)) continue;
            Origami o(h, v);
            std::vector<int> key = canonical_key(o);
            auto it = std::lower_bound(keys.begin(), keys.end(), key);
            if (it != keys.end() && *it == key) continue;
            keys.insert(it, key);
        }
    }
    for (const auto& key : keys) {
        const auto sz = static_cast<long>(n);
        out.emplace_back(Permutation(std::vector<int>(key.begin(), key.begin() + sz)),
                         Permutation(std::vector<int>(key.begin() + sz, key.end())));
    }
    return out;
}

}  // namespace slopegap
