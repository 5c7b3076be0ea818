#pragma once

#include "slopegap/error.hpp"
#include "slopegap/rational.hpp"

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace slopegap {

/// A bijection of {0..n-1}. Files and printed output use 1-based cycle notation.
class Permutation {
public:
    Permutation() = default;
    explicit Permutation(std::vector<int> images);

    static Permutation identity(int n);

    int size() const { return static_cast<int>(images_.size()); }
    int operator()(int i) const { return images_[static_cast<std::size_t>(i)]; }
    const std::vector<int>& images() const { return images_; }

    Permutation inverse() const;
    bool is_identity() const;

    /// 1-based disjoint cycle notation, fixed points omitted, "()" for the identity.
    std::string to_cycles() const;

    /// (a * b)(i) = a(b(i))
    friend Permutation operator*(const Permutation& a, const Permutation& b);
    friend bool operator==(const Permutation&, const Permutation&) = default;

private:
    std::vector<int> images_;
};

/// A connected square-tiled surface. `h` sends a square to its right neighbour,
/// `v` to its upper neighbour.
class Origami {
public:
    Origami(Permutation h, Permutation v);

    int size() const { return h_.size(); }
    const Permutation& h() const { return h_; }
    const Permutation& v() const { return v_; }

    /// Square torus, one square.
    static Origami torus();

    friend bool operator==(const Origami&, const Origami&) = default;

private:
    Permutation h_;
    Permutation v_;
};

class OrigamiParseError : public InputError {
public:
    enum class Kind { Malformed, NotBijective, Disconnected };
    OrigamiParseError(Kind kind, const std::string& what) : InputError(what), kind_(kind) {}
    Kind kind() const { return kind_; }

private:
    Kind kind_;
};

Origami parse_origami(std::string_view text);
Origami load_origami(const std::filesystem::path& path);
std::string format_origami(const Origami& o);

/// Exact holonomy of a saddle connection of an unrescaled origami (integral).
struct HolVec {
    std::int64_t x = 0;
    std::int64_t y = 0;
    friend auto operator<=>(const HolVec&, const HolVec&) = default;
};

struct VertexClass {
    int id = 0;
    /// Total angle as a multiple of pi/2 (4 for a regular point).
    int angle_quarter_turns = 4;
    bool singular = false;
    /// Endpoint of saddle connections: singular, or the designated class of an unramified torus cover.
    bool marked = false;
    /// Squares whose lower-left corner is this point.
    std::vector<int> squares;
};

struct CornerData {
    std::vector<VertexClass> classes;
    std::vector<int> class_of_square;
    std::vector<char> marked_square;
    int singular_count() const;
};

/// Vertex classes of the lower-left corners. If no class is singular, the class of square 0 is
/// marked; the translation symmetry of an unramified cover makes this choice canonical.
CornerData singular_corners(const Origami& o);

struct Cylinder {
    Rational circumference;
    Rational height;
};

struct CylinderDecomposition {
    std::vector<Cylinder> cylinders;
    HolVec direction{1, 0};
    Rational area() const;
};

/// Maximal horizontal cylinders bounded by marked corners.
CylinderDecomposition horizontal_cylinders(const Origami& o);

/// Distinct lengths of horizontal saddle connections, ascending.
std::vector<std::int64_t> horizontal_saddle_lengths(const Origami& o);

enum class Generator { S = 0, Sinv = 1, T = 2, Tinv = 3 };

/// S = [[0,-1],[1,0]], T = [[1,1],[0,1]].
Origami sl2z_apply(Generator g, const Origami& o);
Origami sl2z_apply(std::string_view word, const Origami& o);
/// Rotation by pi, i.e. the action of -I.
Origami rotate_half_turn(const Origami& o);

/// Relabelling-invariant key: the lexicographically least breadth-first relabelling.
std::vector<int> canonical_key(const Origami& o);
Origami canonical_form(const Origami& o);
bool equivalent(const Origami& a, const Origami& b);
std::uint64_t key_hash(const std::vector<int>& key);

/// One representative of each connected origami with n squares, up to relabelling.
std::vector<Origami> all_origamis(int n);

}  // namespace slopegap
