#pragma once

#include "hypwalk/rational.hpp"
#include "hypwalk/word.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace hypwalk {

// ---------------------------------------------------------------------------
// Points of the five exactly-representable model spaces.
// ---------------------------------------------------------------------------

/// Vertex of the Cayley tree of a free group (the word itself).
struct TreePoint {
    Word w;
    bool operator==(const TreePoint&) const = default;
};

/// Point of the countable wedge of rays: ray index and arc-length coordinate.
/// Canonical form: the wedge basepoint is (ray 0, s 0); any point with s == 0
/// is normalized to it.
struct RayPoint {
    std::uint32_t ray = 0;
    Rat s{0};
    bool operator==(const RayPoint&) const = default;
};

/// Point of the real line.
struct LinePoint {
    Rat x{0};
    bool operator==(const LinePoint&) const = default;
};

/// Point of Z x Z/2 with the L^1 metric.
struct ZxZ2Point {
    long long n = 0;
    std::uint8_t bit = 0;
    bool operator==(const ZxZ2Point&) const = default;
};

/// Point of the Cayley graph of F_2 x Z/2 (generators a, b and the central
/// involution c), with the L^1 product metric.
struct F2Z2Point {
    Word w;
    std::uint8_t bit = 0;
    bool operator==(const F2Z2Point&) const = default;
};

using ModelPoint = std::variant<TreePoint, RayPoint, LinePoint, ZxZ2Point, F2Z2Point>;

inline RayPoint make_ray_point(std::uint32_t ray, Rat s) {
    if (s < 0) throw std::invalid_argument("ray coordinate must be nonnegative");
    if (s == Rat(0)) return RayPoint{0, Rat(0)};
    return RayPoint{ray, s};
}

enum class Model { FreeTree, Wedge, Line, ZxZ2, F2xZ2 };

/// One of the five model spaces together with its acting data.
///
/// delta is 0 for the tree-like models (line, wedge, free trees) and 1 for
/// the two L^1 product models, where triangles are 1-slim.
struct ModelSpace {
    Model model = Model::FreeTree;
    int rank = 2; // generator count for FreeTree; fixed 2 for F2xZ2

    static ModelSpace free_group(int k) {
        if (k < 1 || k > 26) throw std::invalid_argument("free-group rank must be in [1,26]");
        return ModelSpace{Model::FreeTree, k};
    }
    static ModelSpace wedge() { return ModelSpace{Model::Wedge, 0}; }
    static ModelSpace line() { return ModelSpace{Model::Line, 0}; }
    static ModelSpace zxz2() { return ModelSpace{Model::ZxZ2, 0}; }
    static ModelSpace f2xz2() { return ModelSpace{Model::F2xZ2, 2}; }

    Rat delta() const {
        return (model == Model::ZxZ2 || model == Model::F2xZ2) ? Rat(1) : Rat(0);
    }

    /// Default coarse slack for inequalities that are exact only up to O(delta).
    Rat default_slack() const { return delta() == Rat(0) ? Rat(0) : 4 * delta(); }

    ModelPoint basepoint() const {
        switch (model) {
            case Model::FreeTree: return TreePoint{};
            case Model::Wedge: return RayPoint{};
            case Model::Line: return LinePoint{};
            case Model::ZxZ2: return ZxZ2Point{};
            case Model::F2xZ2: return F2Z2Point{};
        }
        throw std::logic_error("bad model");
    }

    bool is_tree_model() const { return model == Model::FreeTree; }
    bool is_acting_model() const { return model == Model::FreeTree || model == Model::F2xZ2; }

    bool operator==(const ModelSpace&) const = default;
};

// ---------------------------------------------------------------------------
// Metric and geodesics.
// ---------------------------------------------------------------------------

namespace detail {
[[noreturn]] inline void model_mismatch(const char* what) {
    throw std::invalid_argument(std::string("point does not belong to this model space: ") + what);
}
} // namespace detail

Rat dist(const ModelSpace& space, const ModelPoint& x, const ModelPoint& y);

/// A geodesic segment. Tree-like models list every lattice point in order;
/// the continuous models (line, wedge) list the endpoint parameterization,
/// with the wedge basepoint as an interior vertex when the endpoints sit on
/// different rays.
struct Geodesic {
    std::vector<ModelPoint> pts;

    const ModelPoint& front() const { return pts.front(); }
    const ModelPoint& back() const { return pts.back(); }
    std::size_t size() const { return pts.size(); }
    bool empty() const { return pts.empty(); }
};

Geodesic geodesic(const ModelSpace& space, const ModelPoint& x, const ModelPoint& y);

/// A geodesic with a direction; reversing flips all signed distances.
struct OrientedGeodesic {
    Geodesic geo;
    bool forward = true;

    OrientedGeodesic reversed() const { return {geo, !forward}; }
};

Rat signed_distance(const ModelSpace& space, const OrientedGeodesic& g,
                    const ModelPoint& x, const ModelPoint& y);

/// Isometric action of the group on its tree (and on F_2 x Z/2). The
/// wedge, line and Z x Z/2 models carry no group action here; they exist
/// for the horofunction examples.
ModelPoint act(const ModelSpace& space, const GroupElement& g, const ModelPoint& x);

/// Canonical total order on points of one model (shortlex on words, then
/// numeric fields). Used to resolve ties deterministically.
bool model_point_less(const ModelPoint& a, const ModelPoint& b);

std::string to_string(const ModelPoint& p);

// ---------------------------------------------------------------------------
// Boundary points.
// ---------------------------------------------------------------------------

/// An end of the Cayley tree: the infinite reduced word prefix . period^inf.
/// Restricting continuations to eventually periodic words keeps every
/// boundary computation terminating while still covering axes of hyperbolic
/// elements and sampled walk limits.
struct TreeEnd {
    Word prefix;
    Word period;

    TreeEnd() = default;
    TreeEnd(Word pfx, Word per);

    Word::Letter letter(std::size_t i) const {
        if (i < prefix.size()) return prefix[i];
        return period[(i - prefix.size()) % period.size()];
    }

    Word head(std::size_t n) const {
        std::vector<Word::Letter> ls(n);
        for (std::size_t i = 0; i < n; ++i) ls[i] = letter(i);
        return Word::reduced(ls);
    }

    /// Drops the first n letters.
    TreeEnd drop(std::size_t n) const;

    /// Reduced left concatenation w . (this); cancellation eats into the
    /// infinite word but always terminates.
    TreeEnd prepend(const Word& w) const;
};

/// Longest common prefix of two ends; nullopt means they are equal (the
/// overlap is infinite). Decidable because both are eventually periodic.
std::optional<std::size_t> common_prefix_len(const TreeEnd& a, const TreeEnd& b);

inline std::size_t common_prefix_len(const TreeEnd& a, const Word& w) {
    std::size_t i = 0;
    while (i < w.size() && a.letter(i) == w[i]) ++i;
    return i;
}

inline bool same_end(const TreeEnd& a, const TreeEnd& b) {
    return !common_prefix_len(a, b).has_value();
}

struct LineEnd {
    bool positive = true;
    bool operator==(const LineEnd&) const = default;
};

struct WedgeEnd {
    std::uint32_t ray = 0;
    bool operator==(const WedgeEnd&) const = default;
};

/// End of Z x Z/2. The Gromov boundary is {+inf, -inf}; the sheet bit
/// distinguishes the two horofunctions lying over each end.
struct ZxZ2End {
    bool positive = true;
    std::uint8_t sheet = 0;
    bool operator==(const ZxZ2End&) const = default;
};

/// End of F_2 x Z/2: a tree end plus the horofunction sheet.
struct F2Z2End {
    TreeEnd end;
    std::uint8_t sheet = 0;
};

using BoundaryPoint = std::variant<TreeEnd, LineEnd, WedgeEnd, ZxZ2End, F2Z2End>;

/// Boundary action for the tree models.
BoundaryPoint act(const ModelSpace& space, const GroupElement& g, const BoundaryPoint& xi);

bool same_boundary_point(const BoundaryPoint& a, const BoundaryPoint& b);

std::string to_string(const TreeEnd& e);

/// Axis endpoints of a hyperbolic group element (nonempty cyclic core):
/// forward end conj . core^inf, backward end conj . (core^{-1})^inf.
struct AxisEnds {
    TreeEnd forward;
    TreeEnd backward;
};
std::optional<AxisEnds> axis_ends(const GroupElement& g);

// ---------------------------------------------------------------------------
// Word enumeration helpers (exhaustive oracles use these heavily).
// ---------------------------------------------------------------------------

/// Visits every reduced word of length <= max_len, identity included,
/// in depth-first shortlex-ish order.
void for_each_word(int rank, int max_len, const std::function<void(const Word&)>& fn);

std::vector<Word> ball_words(int rank, int radius);

/// All words u with d(center, u) <= radius.
std::vector<Word> ball_around(int rank, const Word& center, int radius);

/// Abstract metric-space hook for user models. The built-in models are the
/// only ones exercised by the test suites; this exists so external spaces
/// can reuse the generic checks.
class MetricSpaceInterface {
public:
    virtual ~MetricSpaceInterface() = default;
    virtual Rat distance(const ModelPoint& x, const ModelPoint& y) const = 0;
    virtual Geodesic connect(const ModelPoint& x, const ModelPoint& y) const = 0;
};

class ModelSpaceAdapter final : public MetricSpaceInterface {
public:
    explicit ModelSpaceAdapter(ModelSpace s) : space_(s) {}
    Rat distance(const ModelPoint& x, const ModelPoint& y) const override {
        return dist(space_, x, y);
    }
    Geodesic connect(const ModelPoint& x, const ModelPoint& y) const override {
        return geodesic(space_, x, y);
    }

private:
    ModelSpace space_;
};

} // namespace hypwalk
