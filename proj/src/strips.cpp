#include "hypwalk/strips.hpp"

#include "hypwalk/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hypwalk {

BGParams::BGParams(Rat k, Rat r, GroupElement v_elem) : K(k), R(r), v(std::move(v_elem)) {
    if (K <= 0 || R <= 0) throw std::invalid_argument("K and R must be positive");
    if (v.flip) throw std::invalid_argument("v must be a free-group element");
    if (Rat(static_cast<long long>(v.word.size())) < R)
        throw std::invalid_argument("need d(x0, v x0) >= R");
}

BoundaryPair::BoundaryPair(TreeEnd a, TreeEnd b) : alpha(std::move(a)), beta(std::move(b)) {
    if (same_end(alpha, beta)) throw std::invalid_argument("boundary pair must be distinct ends");
}

std::size_t BoundaryPair::split_depth() const {
    return *common_prefix_len(alpha, beta);
}

namespace {

// (x . xi)_z on the tree via the stabilized Busemann difference:
// 2 (x . xi)_z = d(z,x) + (|z| - 2 lcp(z,xi)) - (|x| - 2 lcp(x,xi)).
Rat gp_end(const Word& x, const TreeEnd& xi, const Word& z) {
    long long dzx = word_distance(z, x);
    long long bz = static_cast<long long>(z.size()) - 2 * static_cast<long long>(common_prefix_len(xi, z));
    long long bx = static_cast<long long>(x.size()) - 2 * static_cast<long long>(common_prefix_len(xi, x));
    return Rat(dzx + bz - bx) / 2;
}

} // namespace

bool is_bounded_geometry(const GroupElement& g, const BoundaryPair& pair, const BGParams& params) {
    if (g.flip) throw std::invalid_argument("bounded geometry applies to free-group elements");
    const Word& w = g.word;
    Word wv = w * params.v.word;
    Rat vlen(static_cast<long long>(params.v.word.size()));
    if (vlen < params.R) return false; // condition (1); g-independent
    Rat threshold = vlen - params.K;
    if (gp_end(w, pair.alpha, wv) < threshold) return false;  // (2)
    if (gp_end(wv, pair.beta, w) < threshold) return false;   // (3)
    return true;
}

std::vector<GroupElement> enumerate_bg_brute(const BoundaryPair& pair, const BGParams& params,
                                             int r, int budget) {
    if (r > budget) throw std::invalid_argument("brute-force radius exceeds the enumeration budget");
    std::vector<GroupElement> out;
    int rank = std::max({2, pair.alpha.prefix.max_index(), pair.alpha.period.max_index(),
                         pair.beta.prefix.max_index(), pair.beta.period.max_index(),
                         params.v.word.max_index()});
    for_each_word(rank, r, [&](const Word& w) {
        GroupElement g{w, false};
        if (is_bounded_geometry(g, pair, params)) out.push_back(g);
    });
    std::sort(out.begin(), out.end(), shortlex_less);
    return out;
}

namespace {

struct EndArray {
    std::vector<Word::Letter> letters;

    Word::Letter at(std::size_t i) const {
        if (i >= letters.size()) throw std::logic_error("end array probed beyond its depth");
        return letters[i];
    }

    static EndArray materialize(const TreeEnd& e, std::size_t depth) {
        EndArray a;
        a.letters.resize(depth);
        for (std::size_t i = 0; i < depth; ++i) a.letters[i] = e.letter(i);
        return a;
    }
};

// Matching length of z (from position zo) against the end letters from
// position off.
std::size_t match_end(std::span<const Word::Letter> z, std::size_t zo, const EndArray& end,
                      std::size_t off) {
    std::size_t i = 0;
    while (zo + i < z.size() && end.at(off + i) == z[zo + i]) ++i;
    return i;
}

/// Streaming enumeration of bounded-geometry elements inside B_G(1, r).
/// Every such element lies within K of the (alpha,beta) geodesic, so the
/// search walks the two rays beyond their split depth and fans out a short
/// suffix tube; the cone behind the split point is a single small ball.
class TubeEnumerator {
public:
    TubeEnumerator(const BoundaryPair& pair, const BGParams& params, int r)
        : pair_(pair), params_(params), r_(r) {
        rank_ = std::max({2, pair.alpha.prefix.max_index(), pair.alpha.period.max_index(),
                          pair.beta.prefix.max_index(), pair.beta.period.max_index(),
                          params.v.word.max_index()});
        m_ = pair.split_depth();
        tube_ = std::max(2, static_cast<int>(std::ceil(to_double(params.K))) + 1);
        std::size_t depth = static_cast<std::size_t>(r_) + static_cast<std::size_t>(tube_) +
                            params_.v.word.size() + 4;
        alpha_ = EndArray::materialize(pair.alpha, depth);
        beta_ = EndArray::materialize(pair.beta, depth);
        vlen_ = static_cast<long long>(params_.v.word.size());
        threshold2_ = 2 * (Rat(vlen_) - params_.K); // doubled Gromov-product bound
    }

    /// Required resolution depth when the ends come from sampled walks.
    std::size_t probe_depth() const { return alpha_.letters.size(); }

    template <class Fn>
    void run(Fn&& emit) {
        if (static_cast<long long>(m_) <= r_ + tube_) {
            // The ball behind and around the split point.
            Word c = pair_.alpha.head(m_);
            for (const Word& u : ball_around(rank_, c, tube_)) {
                if (static_cast<int>(u.size()) > r_) continue;
                std::size_t cp = u.common_prefix_len(c);
                if (cp == m_ && u.size() > m_) {
                    Word::Letter next = u[m_];
                    if (next == alpha_.at(m_) || next == beta_.at(m_)) continue; // belongs to a ray cone
                }
                GroupElement g{u, false};
                if (is_bounded_geometry(g, pair_, params_)) emit(g);
            }
        }
        ray_side(alpha_, beta_, true, emit);
        ray_side(beta_, alpha_, false, emit);
    }

private:
    // Candidates u = (own-ray head of length t) . s for t > split depth,
    // with s staying off the ray in both directions. All Gromov products in
    // the membership test reduce to lcps against the two end arrays, so each
    // candidate costs O(|s| + |v|).
    template <class Fn>
    void ray_side(const EndArray& own, const EndArray& other, bool own_is_alpha, Fn&& emit) {
        std::vector<Word::Letter> s;
        for (long long t = static_cast<long long>(m_) + 1; t <= r_; ++t) {
            dfs(own, other, own_is_alpha, static_cast<std::size_t>(t), s, emit);
        }
    }

    template <class Fn>
    void dfs(const EndArray& own, const EndArray& other, bool own_is_alpha, std::size_t t,
             std::vector<Word::Letter>& s, Fn&& emit) {
        if (check(own, other, own_is_alpha, t, s)) emit(materialize(own, t, s));
        if (static_cast<int>(s.size()) >= tube_ ||
            static_cast<long long>(t + s.size()) >= r_)
            return;
        for (int idx = 1; idx <= rank_; ++idx) {
            for (int sign : {+1, -1}) {
                auto l = static_cast<Word::Letter>(sign * idx);
                if (s.empty()) {
                    if (l == own.at(t)) continue;                                    // along the ray
                    if (l == static_cast<Word::Letter>(-own.at(t - 1))) continue;    // back along the ray
                } else if (s.back() == static_cast<Word::Letter>(-l)) {
                    continue; // keep s reduced
                }
                s.push_back(l);
                dfs(own, other, own_is_alpha, t, s, emit);
                s.pop_back();
            }
        }
    }

    bool check(const EndArray& own, const EndArray& other, bool own_is_alpha, std::size_t t,
               const std::vector<Word::Letter>& s) {
        long long ulen = static_cast<long long>(t + s.size());
        if (ulen > r_) return false;
        // lcp(u, own end) and lcp(u, other end).
        long long lcp_u_own = static_cast<long long>(t) +
                              static_cast<long long>(match_end(s, 0, own, t));
        long long lcp_u_other = static_cast<long long>(std::min(t, m_));
        if (t == m_) lcp_u_other += static_cast<long long>(match_end(s, 0, other, t));

        // u v, reduced: first z = s * v cancels internally, then eats e
        // letters of the ray head.
        Word z = Word::reduced(s) * params_.v.word;
        std::size_t e = 0;
        while (e < z.size() && e < t &&
               z[e] == static_cast<Word::Letter>(-own.at(t - 1 - e)))
            ++e;
        std::size_t t2 = t - e;
        long long uvlen = static_cast<long long>(t2) + static_cast<long long>(z.size() - e);
        long long lcp_uv_own = static_cast<long long>(t2) +
                               static_cast<long long>(match_end(z.letters(), e, own, t2));
        long long lcp_uv_other;
        if (t2 > m_) {
            lcp_uv_other = static_cast<long long>(m_);
        } else {
            lcp_uv_other = static_cast<long long>(t2) +
                           static_cast<long long>(match_end(z.letters(), e, other, t2));
        }

        long long lcp_u_alpha = own_is_alpha ? lcp_u_own : lcp_u_other;
        long long lcp_u_beta = own_is_alpha ? lcp_u_other : lcp_u_own;
        long long lcp_uv_alpha = own_is_alpha ? lcp_uv_own : lcp_uv_other;
        long long lcp_uv_beta = own_is_alpha ? lcp_uv_other : lcp_uv_own;

        // Doubled Gromov products against the shadow thresholds.
        Rat cond2 = Rat(vlen_ + uvlen - 2 * lcp_uv_alpha - ulen + 2 * lcp_u_alpha);
        if (cond2 < threshold2_) return false;
        Rat cond3 = Rat(vlen_ + ulen - 2 * lcp_u_beta - uvlen + 2 * lcp_uv_beta);
        return cond3 >= threshold2_;
    }

    GroupElement materialize(const EndArray& own, std::size_t t, const std::vector<Word::Letter>& s) {
        std::vector<Word::Letter> ls;
        ls.reserve(t + s.size());
        for (std::size_t i = 0; i < t; ++i) ls.push_back(own.at(i));
        for (Word::Letter l : s) ls.push_back(l);
        return GroupElement{Word::reduced(ls), false};
    }

    const BoundaryPair& pair_;
    const BGParams& params_;
    int r_;
    int rank_ = 2;
    int tube_ = 2;
    std::size_t m_ = 0;
    EndArray alpha_, beta_;
    long long vlen_ = 0;
    Rat threshold2_{0};
};

} // namespace

std::vector<GroupElement> enumerate_bg_in_ball(const BoundaryPair& pair, const BGParams& params,
                                               int r) {
    TubeEnumerator tube(pair, params, r);
    std::vector<GroupElement> out;
    tube.run([&](const GroupElement& g) { out.push_back(g); });
    std::sort(out.begin(), out.end(), shortlex_less);
    return out;
}

std::size_t count_bg_in_ball(const BoundaryPair& pair, const BGParams& params, int r) {
    TubeEnumerator tube(pair, params, r);
    std::size_t n = 0;
    tube.run([&](const GroupElement&) { ++n; });
    return n;
}

std::size_t per_ball_multiplicity(const BoundaryPair& pair, const BGParams& params, const Word& x) {
    Rat four_k = 4 * params.K;
    int radius = static_cast<int>(to_double(four_k)); // 4K an integer in practice
    int rank = std::max({2, x.max_index(), params.v.word.max_index(),
                         pair.alpha.prefix.max_index(), pair.alpha.period.max_index(),
                         pair.beta.prefix.max_index(), pair.beta.period.max_index()});
    std::size_t n = 0;
    for (const Word& u : ball_around(rank, x, radius)) {
        if (Rat(word_distance(x, u)) > four_k) continue;
        if (is_bounded_geometry(GroupElement{u, false}, pair, params)) ++n;
    }
    return n;
}

std::size_t displacement_count(int rank, const Word& x, const Word& y, int displacement,
                               int budget) {
    if (displacement > budget)
        throw std::invalid_argument("displacement bound exceeds the enumeration budget");
    // Conjugating by x^{-1} moves the pair to (e, x^{-1}y) without changing
    // displacements; then d(e, ge) = |g| confines g to the ball B(e, D).
    Word y2 = x.inverse() * y;
    Word y2inv = y2.inverse();
    std::size_t n = 0;
    for_each_word(rank, displacement, [&](const Word& g) {
        Word conj = y2inv * g * y2;
        if (static_cast<int>(conj.size()) <= displacement) ++n;
    });
    return n;
}

namespace {

std::optional<Word> stable_prefix(const SamplePath& path, int margin) {
    long long depth = static_cast<long long>(path.locations.back().word.size()) - margin - 1;
    if (depth <= 0) return std::nullopt;
    return limit_point(path, static_cast<std::size_t>(depth), margin);
}

} // namespace

StripSeries strip_criterion_series(const BiSamplePath& path, const BGParams& params,
                                   const std::vector<std::size_t>& ns) {
    StripSeries series;
    // Resolve both limit points as deep as the sampled paths allow.
    std::size_t max_step = 1;
    for (const GroupElement& g : path.forward.increments)
        max_step = std::max(max_step, g.word.size());
    int margin = std::max(1, static_cast<int>((max_step + 1) / 2));
    std::optional<Word> fwd = stable_prefix(path.forward, margin);
    std::optional<Word> bwd = stable_prefix(path.backward, margin);
    if (!fwd || !bwd || fwd->empty() || bwd->empty()) return series;
    if (fwd->common_prefix_len(*bwd) == std::min(fwd->size(), bwd->size()))
        return series; // degenerate pair: one resolved prefix extends the other
    // The backward limit sits in the shadow behind g, the forward limit in
    // the shadow beyond gv.
    TreeEnd alpha(*bwd, Word::from_letter(bwd->back()));
    TreeEnd beta(*fwd, Word::from_letter(fwd->back()));
    BoundaryPair pair(alpha, beta);
    series.pair_resolved = true;

    for (std::size_t n : ns) {
        StripSeriesPoint pt;
        pt.n = n;
        if (n > path.forward.length()) {
            series.points.push_back(pt);
            continue;
        }
        long long r = static_cast<long long>(path.forward.locations[n].word.size());
        pt.radius = r;
        TubeEnumerator probe(pair, params, static_cast<int>(r));
        // Only trust the count if every Gromov product it takes is decided
        // by the resolved prefixes, not the fabricated periodic tails.
        if (probe.probe_depth() > std::min(fwd->size(), bwd->size())) {
            series.points.push_back(pt);
            continue;
        }
        pt.count = count_bg_in_ball(pair, params, static_cast<int>(r));
        pt.log_card_over_n = std::log1p(static_cast<double>(pt.count)) / static_cast<double>(n);
        pt.resolved = true;
        series.points.push_back(pt);
    }

    // Density of times whose location is itself a bounded-geometry element.
    // Skip locations deep enough to outrun the resolved prefixes; their
    // membership would read the fabricated periodic tails.
    std::size_t max_n = 0;
    for (std::size_t n : ns) max_n = std::max(max_n, n);
    max_n = std::min(max_n, path.forward.length());
    std::size_t depth_ok = std::min(fwd->size(), bwd->size());
    std::size_t hits = 0, counted = 0;
    for (std::size_t n = 1; n <= max_n; ++n) {
        const GroupElement& w = path.forward.locations[n];
        if (w.word.size() + params.v.word.size() + 2 > depth_ok) continue;
        ++counted;
        if (is_bounded_geometry(w, pair, params)) ++hits;
    }
    series.density_times = hits;
    series.bg_time_density = counted == 0 ? 0.0 : static_cast<double>(hits) / static_cast<double>(counted);
    return series;
}

std::vector<StripSeries> strip_series_experiment(const StepDistribution& mu,
                                                 const BGParams& params,
                                                 const std::vector<std::size_t>& ns,
                                                 std::size_t sim_len, int trials,
                                                 std::uint64_t seed, int workers) {
    if (mu.uses_flip()) throw std::invalid_argument("strips run on free-group walks");
    return parallel_trials<StripSeries>(
        trials,
        [&](int t) {
            BiSamplePath bp = sample_bi_path(mu, sim_len, sim_len,
                                             derive_stream(seed, static_cast<std::uint64_t>(t)));
            return strip_criterion_series(bp, params, ns);
        },
        workers > 0 ? workers : default_workers());
}

} // namespace hypwalk
