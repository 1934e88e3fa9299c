#include "hypwalk/horofunction.hpp"

#include <algorithm>

namespace hypwalk {

Horofunction orbit_horofunction(const ModelSpace& space, ModelPoint y) {
    return orbit_horofunction(space, std::move(y), space.basepoint());
}

Horofunction orbit_horofunction(const ModelSpace& space, ModelPoint y, ModelPoint basepoint) {
    return Horofunction{space, std::move(basepoint), OrbitHoro{std::move(y)}};
}

Horofunction busemann_horofunction(const ModelSpace& space, BoundaryPoint xi) {
    return busemann_horofunction(space, std::move(xi), space.basepoint());
}

Horofunction busemann_horofunction(const ModelSpace& space, BoundaryPoint xi, ModelPoint basepoint) {
    return Horofunction{space, std::move(basepoint), BusemannHoro{std::move(xi)}};
}

namespace {

// Busemann value normalized at the canonical basepoint; the general-basepoint
// value is the cocycle difference raw(z) - raw(x0).
Rat busemann_raw(const ModelSpace& space, const BoundaryPoint& xi, const ModelPoint& z) {
    switch (space.model) {
        case Model::FreeTree: {
            const auto* end = std::get_if<TreeEnd>(&xi);
            if (!end) throw std::invalid_argument("boundary point does not match the model");
            const Word& w = std::get<TreePoint>(z).w;
            long long overlap = static_cast<long long>(common_prefix_len(*end, w));
            return Rat(static_cast<long long>(w.size()) - 2 * overlap);
        }
        case Model::Line: {
            const auto* end = std::get_if<LineEnd>(&xi);
            if (!end) throw std::invalid_argument("boundary point does not match the model");
            Rat x = std::get<LinePoint>(z).x;
            return end->positive ? -x : x;
        }
        case Model::Wedge: {
            const auto* end = std::get_if<WedgeEnd>(&xi);
            if (!end) throw std::invalid_argument("boundary point does not match the model");
            const auto& p = std::get<RayPoint>(z);
            bool on_ray = p.s != Rat(0) && p.ray == end->ray;
            return on_ray ? -p.s : p.s;
        }
        case Model::ZxZ2: {
            const auto* end = std::get_if<ZxZ2End>(&xi);
            if (!end) throw std::invalid_argument("boundary point does not match the model");
            const auto& p = std::get<ZxZ2Point>(z);
            Rat base = end->positive ? Rat(-p.n) : Rat(p.n);
            // The horofunction boundary is the product of the Gromov boundary
            // with Z/2: the sheet decides the sign of the involution term.
            return base + Rat(end->sheet == 0 ? p.bit : -p.bit);
        }
        case Model::F2xZ2: {
            const auto* end = std::get_if<F2Z2End>(&xi);
            if (!end) throw std::invalid_argument("boundary point does not match the model");
            const auto& p = std::get<F2Z2Point>(z);
            long long overlap = static_cast<long long>(common_prefix_len(end->end, p.w));
            Rat base = Rat(static_cast<long long>(p.w.size()) - 2 * overlap);
            return base + Rat(end->sheet == 0 ? p.bit : -p.bit);
        }
    }
    throw std::logic_error("bad model");
}

} // namespace

Rat horo_eval(const Horofunction& h, const ModelPoint& z) {
    if (const auto* orbit = std::get_if<OrbitHoro>(&h.kind))
        return dist(h.space, z, orbit->y) - dist(h.space, h.basepoint, orbit->y);
    if (const auto* bus = std::get_if<BusemannHoro>(&h.kind))
        return busemann_raw(h.space, bus->xi, z) - busemann_raw(h.space, bus->xi, h.basepoint);
    return std::get<FunctionHoro>(h.kind).f(z);
}

HoroClass classify(const Horofunction& h, int probe_budget) {
    if (std::holds_alternative<OrbitHoro>(h.kind)) return HoroClass::Finite;
    if (std::holds_alternative<BusemannHoro>(h.kind)) return HoroClass::Infinite;
    // Probing evaluates the function on growing balls, but finitely many
    // samples of a 1-Lipschitz function certify neither boundedness nor
    // unboundedness below, so the honest answer stays Unknown.
    if (h.space.model == Model::FreeTree) {
        for (const Word& w : ball_words(h.space.rank, probe_budget))
            (void)horo_eval(h, TreePoint{w});
    }
    return HoroClass::Unknown;
}

LocalMinResult local_min_map(const Horofunction& h) {
    if (const auto* bus = std::get_if<BusemannHoro>(&h.kind)) {
        // Any minimizing sequence is a Gromov sequence converging to xi.
        return LocalMinResult{bus->xi};
    }
    const auto* orbit = std::get_if<OrbitHoro>(&h.kind);
    if (!orbit) throw std::invalid_argument("local_min_map needs a structural horofunction");
    std::vector<ModelPoint> pts;
    switch (h.space.model) {
        case Model::FreeTree: {
            const Word& y = std::get<TreePoint>(orbit->y).w;
            pts.push_back(TreePoint{y});
            for (int idx = 1; idx <= h.space.rank; ++idx)
                for (int sign : {+1, -1})
                    pts.push_back(TreePoint{y * Word::from_letter(static_cast<Word::Letter>(sign * idx))});
            break;
        }
        case Model::F2xZ2: {
            const auto& y = std::get<F2Z2Point>(orbit->y);
            pts.push_back(y);
            pts.push_back(F2Z2Point{y.w, static_cast<std::uint8_t>(1 - y.bit)});
            for (int idx = 1; idx <= 2; ++idx)
                for (int sign : {+1, -1})
                    pts.push_back(F2Z2Point{y.w * Word::from_letter(static_cast<Word::Letter>(sign * idx)), y.bit});
            break;
        }
        case Model::ZxZ2: {
            const auto& y = std::get<ZxZ2Point>(orbit->y);
            pts.push_back(y);
            pts.push_back(ZxZ2Point{y.n, static_cast<std::uint8_t>(1 - y.bit)});
            pts.push_back(ZxZ2Point{y.n - 1, y.bit});
            pts.push_back(ZxZ2Point{y.n + 1, y.bit});
            break;
        }
        case Model::Line: {
            Rat x = std::get<LinePoint>(orbit->y).x;
            pts.push_back(LinePoint{x - 1});
            pts.push_back(LinePoint{x});
            pts.push_back(LinePoint{x + 1});
            break;
        }
        case Model::Wedge: {
            const auto& y = std::get<RayPoint>(orbit->y);
            if (y.s < Rat(1))
                throw std::invalid_argument(
                    "the sublevel set meets every ray and has no finite description");
            pts.push_back(make_ray_point(y.ray, y.s - 1));
            pts.push_back(y);
            pts.push_back(make_ray_point(y.ray, y.s + 1));
            break;
        }
    }
    std::sort(pts.begin(), pts.end(), model_point_less);
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return LocalMinResult{std::move(pts)};
}

ProfileResult restrict_profile(const Horofunction& h, const OrientedGeodesic& gamma,
                               std::optional<Rat> slack) {
    if (gamma.geo.empty()) throw std::invalid_argument("empty geodesic");
    Rat sl = slack ? *slack : h.space.default_slack();

    std::vector<ModelPoint> samples = gamma.geo.pts;
    if (!gamma.forward) std::reverse(samples.begin(), samples.end());
    if ((h.space.model == Model::Line || h.space.model == Model::Wedge)) {
        // Piecewise-linear deviations peak at vertices or at the defining
        // point's projection, so one extra sample keeps the residual exact.
        if (const auto* orbit = std::get_if<OrbitHoro>(&h.kind)) {
            ModelPoint proj = nearest_point_projection(h.space, orbit->y, gamma.geo);
            auto pos = std::find_if(samples.begin(), samples.end(), [&](const ModelPoint& q) {
                return dist(h.space, q, proj) == Rat(0);
            });
            if (pos == samples.end()) {
                // insert keeping order along the geodesic
                auto it = samples.begin() + 1;
                for (; it != samples.end(); ++it) {
                    Rat a = dist(h.space, samples.front(), proj);
                    Rat b = dist(h.space, samples.front(), *it);
                    if (a <= b) break;
                }
                samples.insert(it, proj);
            }
        }
    }

    std::vector<Rat> vals;
    vals.reserve(samples.size());
    for (const ModelPoint& q : samples) vals.push_back(horo_eval(h, q));

    auto residual_for = [&](const std::vector<Rat>& tmpl) {
        Rat r(0);
        for (std::size_t i = 0; i < vals.size(); ++i) r = rat_max(r, rat_abs(vals[i] - tmpl[i]));
        return r;
    };

    // Monotone templates from the first point.
    std::vector<Rat> tmpl(vals.size());
    ProfileResult best;
    bool have = false;
    for (int slope : {-1, +1}) {
        for (std::size_t i = 0; i < samples.size(); ++i)
            tmpl[i] = vals[0] + Rat(slope) * dist(h.space, samples[0], samples[i]);
        Rat r = residual_for(tmpl);
        if (!have || r < best.residual) {
            best = ProfileResult{ProfileKind::Monotone, samples.front(), slope, r};
            have = true;
        }
    }
    // V templates around each candidate vertex (interior minima only; an
    // endpoint V is already a monotone profile).
    for (std::size_t p = 1; p + 1 < samples.size(); ++p) {
        for (std::size_t i = 0; i < samples.size(); ++i)
            tmpl[i] = vals[p] + dist(h.space, samples[p], samples[i]);
        Rat r = residual_for(tmpl);
        if (r < best.residual) best = ProfileResult{ProfileKind::VShape, samples[p], 0, r};
    }

    if (best.residual > sl)
        throw std::runtime_error("horofunction restriction matches neither profile: residual " +
                                 to_string(best.residual));
    return best;
}

Horofunction horo_action(const GroupElement& g, const Horofunction& h) {
    if (const auto* orbit = std::get_if<OrbitHoro>(&h.kind))
        return Horofunction{h.space, h.basepoint, OrbitHoro{act(h.space, g, orbit->y)}};
    if (const auto* bus = std::get_if<BusemannHoro>(&h.kind))
        return Horofunction{h.space, h.basepoint, BusemannHoro{act(h.space, g, bus->xi)}};
    throw std::invalid_argument("cannot act on a function horofunction");
}

std::vector<Rat> pointwise_deviation_series(const std::vector<Horofunction>& seq,
                                            const Horofunction& candidate,
                                            const std::vector<ModelPoint>& test_points) {
    std::vector<Rat> out;
    out.reserve(seq.size());
    for (const Horofunction& h : seq) {
        Rat dev(0);
        for (const ModelPoint& z : test_points)
            dev = rat_max(dev, rat_abs(horo_eval(h, z) - horo_eval(candidate, z)));
        out.push_back(dev);
    }
    return out;
}

Rat pointwise_limit_check(const std::vector<Horofunction>& seq, const Horofunction& candidate,
                          const std::vector<ModelPoint>& test_points) {
    if (seq.empty()) throw std::invalid_argument("empty horofunction sequence");
    return pointwise_deviation_series(seq, candidate, test_points).back();
}

} // namespace hypwalk
