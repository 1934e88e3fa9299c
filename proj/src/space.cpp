#include "hypwalk/space.hpp"

#include <algorithm>
#include <numeric>

namespace hypwalk {

namespace {

const TreePoint& as_tree(const ModelPoint& p) {
    if (const auto* t = std::get_if<TreePoint>(&p)) return *t;
    detail::model_mismatch("expected tree point");
}

const RayPoint& as_ray(const ModelPoint& p) {
    if (const auto* t = std::get_if<RayPoint>(&p)) return *t;
    detail::model_mismatch("expected wedge point");
}

const LinePoint& as_line(const ModelPoint& p) {
    if (const auto* t = std::get_if<LinePoint>(&p)) return *t;
    detail::model_mismatch("expected line point");
}

const ZxZ2Point& as_zxz2(const ModelPoint& p) {
    if (const auto* t = std::get_if<ZxZ2Point>(&p)) return *t;
    detail::model_mismatch("expected ZxZ/2 point");
}

const F2Z2Point& as_f2z2(const ModelPoint& p) {
    if (const auto* t = std::get_if<F2Z2Point>(&p)) return *t;
    detail::model_mismatch("expected F2xZ/2 point");
}

} // namespace

Rat dist(const ModelSpace& space, const ModelPoint& x, const ModelPoint& y) {
    switch (space.model) {
        case Model::FreeTree:
            return Rat(word_distance(as_tree(x).w, as_tree(y).w));
        case Model::Wedge: {
            const RayPoint& a = as_ray(x);
            const RayPoint& b = as_ray(y);
            if (a.ray == b.ray || a.s == Rat(0) || b.s == Rat(0)) return rat_abs(a.s - b.s);
            return a.s + b.s; // path through the wedge basepoint
        }
        case Model::Line:
            return rat_abs(as_line(x).x - as_line(y).x);
        case Model::ZxZ2: {
            const ZxZ2Point& a = as_zxz2(x);
            const ZxZ2Point& b = as_zxz2(y);
            long long dn = a.n > b.n ? a.n - b.n : b.n - a.n;
            return Rat(dn + (a.bit != b.bit ? 1 : 0));
        }
        case Model::F2xZ2: {
            const F2Z2Point& a = as_f2z2(x);
            const F2Z2Point& b = as_f2z2(y);
            return Rat(word_distance(a.w, b.w) + (a.bit != b.bit ? 1 : 0));
        }
    }
    throw std::logic_error("bad model");
}

namespace {

// Tree path u -> v: walk u back to the common prefix, then forward along v.
std::vector<Word> tree_path(const Word& u, const Word& v) {
    std::size_t m = u.common_prefix_len(v);
    std::vector<Word> out;
    out.reserve(u.size() - m + v.size() - m + 1);
    for (std::size_t len = u.size(); len + 1 > m + 1; --len) out.push_back(u.prefix(len));
    out.push_back(u.prefix(m));
    for (std::size_t len = m + 1; len <= v.size(); ++len) out.push_back(v.prefix(len));
    return out;
}

} // namespace

Geodesic geodesic(const ModelSpace& space, const ModelPoint& x, const ModelPoint& y) {
    Geodesic g;
    switch (space.model) {
        case Model::FreeTree: {
            for (Word& w : tree_path(as_tree(x).w, as_tree(y).w))
                g.pts.push_back(TreePoint{std::move(w)});
            return g;
        }
        case Model::Wedge: {
            const RayPoint& a = as_ray(x);
            const RayPoint& b = as_ray(y);
            g.pts.push_back(a);
            if (a.ray != b.ray && a.s != Rat(0) && b.s != Rat(0))
                g.pts.push_back(RayPoint{}); // basepoint interior vertex
            if (!(a == b)) g.pts.push_back(b);
            return g;
        }
        case Model::Line: {
            g.pts.push_back(x);
            if (!(as_line(x) == as_line(y))) g.pts.push_back(y);
            return g;
        }
        case Model::ZxZ2: {
            const ZxZ2Point& a = as_zxz2(x);
            const ZxZ2Point& b = as_zxz2(y);
            long long step = b.n >= a.n ? 1 : -1;
            for (long long n = a.n; n != b.n; n += step) g.pts.push_back(ZxZ2Point{n, a.bit});
            g.pts.push_back(ZxZ2Point{b.n, a.bit});
            if (a.bit != b.bit) g.pts.push_back(b); // flip the involution bit last
            return g;
        }
        case Model::F2xZ2: {
            const F2Z2Point& a = as_f2z2(x);
            const F2Z2Point& b = as_f2z2(y);
            for (Word& w : tree_path(a.w, b.w)) g.pts.push_back(F2Z2Point{std::move(w), a.bit});
            if (a.bit != b.bit) g.pts.push_back(b);
            return g;
        }
    }
    throw std::logic_error("bad model");
}

Rat signed_distance(const ModelSpace& space, const OrientedGeodesic& g,
                    const ModelPoint& x, const ModelPoint& y) {
    auto index_of = [&](const ModelPoint& p) -> std::size_t {
        for (std::size_t i = 0; i < g.geo.pts.size(); ++i)
            if (g.geo.pts[i] == p) return i;
        throw std::invalid_argument("point not on the geodesic");
    };
    std::size_t ix = index_of(x), iy = index_of(y);
    Rat d = dist(space, x, y);
    bool le = g.forward ? ix <= iy : iy <= ix;
    return le ? d : -d;
}

ModelPoint act(const ModelSpace& space, const GroupElement& g, const ModelPoint& x) {
    switch (space.model) {
        case Model::FreeTree: {
            if (g.flip) throw std::invalid_argument("involution letter is not part of a free-group model");
            return TreePoint{g.word * as_tree(x).w};
        }
        case Model::F2xZ2: {
            const F2Z2Point& p = as_f2z2(x);
            return F2Z2Point{g.word * p.w, static_cast<std::uint8_t>(p.bit ^ (g.flip ? 1 : 0))};
        }
        default:
            throw std::invalid_argument("this model space carries no group action");
    }
}

namespace {

int variant_rank(const ModelPoint& p) { return static_cast<int>(p.index()); }

} // namespace

bool model_point_less(const ModelPoint& a, const ModelPoint& b) {
    if (variant_rank(a) != variant_rank(b)) return variant_rank(a) < variant_rank(b);
    if (const auto* ta = std::get_if<TreePoint>(&a))
        return ta->w.shortlex_less(std::get<TreePoint>(b).w);
    if (const auto* ra = std::get_if<RayPoint>(&a)) {
        const auto& rb = std::get<RayPoint>(b);
        if (ra->ray != rb.ray) return ra->ray < rb.ray;
        return ra->s < rb.s;
    }
    if (const auto* la = std::get_if<LinePoint>(&a)) return la->x < std::get<LinePoint>(b).x;
    if (const auto* za = std::get_if<ZxZ2Point>(&a)) {
        const auto& zb = std::get<ZxZ2Point>(b);
        if (za->n != zb.n) return za->n < zb.n;
        return za->bit < zb.bit;
    }
    const auto& fa = std::get<F2Z2Point>(a);
    const auto& fb = std::get<F2Z2Point>(b);
    if (!(fa.w == fb.w)) return fa.w.shortlex_less(fb.w);
    return fa.bit < fb.bit;
}

std::string to_string(const ModelPoint& p) {
    if (const auto* t = std::get_if<TreePoint>(&p)) return t->w.str();
    if (const auto* r = std::get_if<RayPoint>(&p))
        return "(" + std::to_string(r->ray) + "," + to_string(r->s) + ")";
    if (const auto* l = std::get_if<LinePoint>(&p)) return to_string(l->x);
    if (const auto* z = std::get_if<ZxZ2Point>(&p))
        return "(" + std::to_string(z->n) + "," + std::to_string(z->bit) + ")";
    const auto& f = std::get<F2Z2Point>(p);
    return f.w.str() + (f.bit ? "c" : "");
}

// ---------------------------------------------------------------------------
// Tree ends.
// ---------------------------------------------------------------------------

TreeEnd::TreeEnd(Word pfx, Word per) : prefix(std::move(pfx)), period(std::move(per)) {
    if (period.empty()) throw std::invalid_argument("tree end needs a nonempty period");
    // Junctions must stay reduced so the infinite word is reduced forever.
    if (!prefix.empty() && prefix.back() == static_cast<Word::Letter>(-period[0]))
        throw std::invalid_argument("tree end prefix cancels into the period");
    if (period.back() == static_cast<Word::Letter>(-period[0]))
        throw std::invalid_argument("tree end period is not cyclically reduced");
}

TreeEnd TreeEnd::drop(std::size_t n) const {
    if (n <= prefix.size()) {
        std::vector<Word::Letter> rest(prefix.letters().begin() + static_cast<std::ptrdiff_t>(n),
                                       prefix.letters().end());
        return TreeEnd(Word::reduced(rest), period);
    }
    // Inside the periodic part: keep the tail of one period as the prefix,
    // the period itself continues unchanged.
    std::size_t off = (n - prefix.size()) % period.size();
    std::vector<Word::Letter> pfx;
    for (std::size_t i = off; i < period.size(); ++i) pfx.push_back(period[i]);
    return TreeEnd(Word::reduced(pfx), period);
}

TreeEnd TreeEnd::prepend(const Word& w) const {
    // Cancel w's tail against the head of the infinite word.
    std::size_t cut = 0;
    std::size_t wl = w.size();
    while (cut < wl && w[wl - 1 - cut] == static_cast<Word::Letter>(-letter(cut))) ++cut;
    TreeEnd rest = drop(cut);
    std::vector<Word::Letter> pfx(w.letters().begin(),
                                  w.letters().begin() + static_cast<std::ptrdiff_t>(wl - cut));
    for (Word::Letter l : rest.prefix.letters()) pfx.push_back(l);
    return TreeEnd(Word::reduced(pfx), rest.period);
}

std::optional<std::size_t> common_prefix_len(const TreeEnd& a, const TreeEnd& b) {
    // Two eventually periodic sequences that agree this far agree forever.
    std::size_t bound = a.prefix.size() + b.prefix.size() +
                        2 * std::lcm(a.period.size(), b.period.size());
    for (std::size_t i = 0; i < bound; ++i)
        if (a.letter(i) != b.letter(i)) return i;
    return std::nullopt;
}

BoundaryPoint act(const ModelSpace& space, const GroupElement& g, const BoundaryPoint& xi) {
    switch (space.model) {
        case Model::FreeTree: {
            if (g.flip) throw std::invalid_argument("involution letter is not part of a free-group model");
            if (const auto* e = std::get_if<TreeEnd>(&xi)) return e->prepend(g.word);
            throw std::invalid_argument("boundary point does not belong to a tree model");
        }
        case Model::F2xZ2: {
            if (const auto* e = std::get_if<F2Z2End>(&xi))
                return F2Z2End{e->end.prepend(g.word), e->sheet};
            throw std::invalid_argument("boundary point does not belong to F2xZ/2");
        }
        default:
            throw std::invalid_argument("this model space carries no group action");
    }
}

bool same_boundary_point(const BoundaryPoint& a, const BoundaryPoint& b) {
    if (a.index() != b.index()) return false;
    if (const auto* ea = std::get_if<TreeEnd>(&a)) return same_end(*ea, std::get<TreeEnd>(b));
    if (const auto* la = std::get_if<LineEnd>(&a)) return *la == std::get<LineEnd>(b);
    if (const auto* wa = std::get_if<WedgeEnd>(&a)) return *wa == std::get<WedgeEnd>(b);
    if (const auto* za = std::get_if<ZxZ2End>(&a)) return *za == std::get<ZxZ2End>(b);
    const auto& fa = std::get<F2Z2End>(a);
    const auto& fb = std::get<F2Z2End>(b);
    return fa.sheet == fb.sheet && same_end(fa.end, fb.end);
}

std::string to_string(const TreeEnd& e) {
    return e.prefix.str() + "(" + e.period.str() + ")*";
}

std::optional<AxisEnds> axis_ends(const GroupElement& g) {
    auto [core, conj] = cyclic_reduce(g);
    if (core.word.empty()) return std::nullopt; // elliptic: no axis in the tree
    return AxisEnds{TreeEnd(conj.word, core.word), TreeEnd(conj.word, core.word.inverse())};
}

// ---------------------------------------------------------------------------
// Enumeration.
// ---------------------------------------------------------------------------

void for_each_word(int rank, int max_len, const std::function<void(const Word&)>& fn) {
    Word w;
    fn(w);
    auto rec = [&](auto&& self) -> void {
        if (static_cast<int>(w.size()) == max_len) return;
        for (int idx = 1; idx <= rank; ++idx) {
            for (int sign = 0; sign < 2; ++sign) {
                auto l = static_cast<Word::Letter>(sign == 0 ? idx : -idx);
                if (!w.empty() && w.back() == static_cast<Word::Letter>(-l)) continue;
                w.push(l);
                fn(w);
                self(self);
                w.pop();
            }
        }
    };
    rec(rec);
}

std::vector<Word> ball_words(int rank, int radius) {
    std::vector<Word> out;
    for_each_word(rank, radius, [&](const Word& w) { out.push_back(w); });
    return out;
}

std::vector<Word> ball_around(int rank, const Word& center, int radius) {
    std::vector<Word> out;
    // d(center, u) <= radius iff u = center * s with |s| <= radius reduced.
    for_each_word(rank, radius, [&](const Word& s) { out.push_back(center * s); });
    // Reduced products center*s are pairwise distinct for distinct s.
    return out;
}

} // namespace hypwalk
