#include "hellydiam/harness.hpp"

#include "hellydiam/combinatorics.hpp"
#include "hellydiam/errors.hpp"
#include "hellydiam/extremal.hpp"
#include "hellydiam/helly_diameter.hpp"
#include "hellydiam/helly_width.hpp"
#include "hellydiam/hull.hpp"
#include "hellydiam/polytope.hpp"
#include "hellydiam/pq.hpp"
#include "hellydiam/tverberg_nets.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <sstream>
#include <thread>

namespace hellydiam {

RunInput input_from_json(const Json& j)
{
    RunInput in;
    if (j.is_object() && j.contains("classes")) {
        for (const auto& c : j.at("classes"))
            in.classes.push_back(family_from_json(c));
    } else {
        in.family = family_from_json(j);
    }
    return in;
}

Json to_json(const RunInput& input)
{
    if (input.family)
        return to_json(*input.family);
    Json classes = Json::array();
    for (const auto& c : input.classes)
        classes.push_back(to_json(c));
    return Json{{"classes", classes}};
}

Json RunReport::to_json() const
{
    Json j{{"command", command}, {"input_digest", input_digest}, {"outcome", outcome}, {"certificates", certificates}};
    if (millis)
        j["timings"] = Json{{"total_ms", *millis}};
    j["verified"] = verified;
    return j;
}

const std::vector<std::string>& command_names()
{
    static const std::vector<std::string> names{"generate", "helly-width", "colorful-width", "frac-width", "frac-diam",
                                                "colorful-diam", "tverberg", "selection", "net", "pq",
                                                "partition", "extremal", "scaling"};
    return names;
}

std::size_t thread_cap()
{
    const char* env = std::getenv("HELLYDIAM_THREADS");
    if (!env)
        return 1;
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    return (end != env && *end == '\0' && v > 0) ? static_cast<std::size_t>(v) : 1;
}

namespace {

Json indices_json(std::span<const std::size_t> idx)
{
    Json out = Json::array();
    for (std::size_t i : idx)
        out.push_back(i);
    return out;
}

Json parts_json(const std::vector<std::vector<std::size_t>>& parts)
{
    Json out = Json::array();
    for (const auto& p : parts)
        out.push_back(indices_json(p));
    return out;
}

Json segments_json(const std::vector<Segment>& segs)
{
    Json out = Json::array();
    for (const auto& s : segs)
        out.push_back(to_json(s));
    return out;
}

const Family& need_family(const RunInput& in)
{
    if (!in.family)
        throw ArgumentError("this command takes a single family");
    return *in.family;
}

std::span<const Family> need_classes(const RunInput& in)
{
    if (in.classes.empty())
        throw ArgumentError("this command takes colour classes");
    return in.classes;
}

Direction direction_for(const RunParams& params, std::size_t dim)
{
    Direction v = params.direction ? *params.direction : Direction(unit_vector(dim, 0));
    if (v.dim() != dim)
        throw ArgumentError("direction dimension differs from family dimension");
    return v;
}

bool in_all(const Family& f, const Segment& s)
{
    for (const auto& b : f.bodies)
        if (!b.contains(s))
            return false;
    return true;
}

bool gap_ok(const Segment& s, const Direction& v, const Scalar& t)
{
    return width_at_least(dot(v.coords(), s.b - s.a), v.norm_sq(), t);
}

bool long_enough(const Segment& s, const Scalar& delta)
{
    return s.squared_length() >= (1 - delta) * (1 - delta);
}

// Intersection of the picked bodies is empty or thinner than t along v.
bool thin_meet(const std::vector<ConvexBody>& bodies, const Direction& v, const Scalar& t)
{
    ConvexBody meet = intersect(bodies);
    return is_empty(meet) || !v_width(meet, v).at_least(t);
}

std::vector<std::size_t> members_of(const Family& f, const Segment& s)
{
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < f.size(); ++i)
        if (f[i].contains(s))
            out.push_back(i);
    return out;
}

bool partition_ok(const std::vector<std::vector<std::size_t>>& parts, std::size_t n)
{
    std::vector<int> seen(n, 0);
    for (const auto& p : parts) {
        if (p.empty())
            return false;
        for (std::size_t i : p) {
            if (i >= n || seen[i]++)
                return false;
        }
    }
    return std::all_of(seen.begin(), seen.end(), [](int x) { return x == 1; });
}

bool hull_holds(const Family& f, std::span<const std::size_t> members, const Segment& s)
{
    return segment_in_hull(union_vertices(f, members), s);
}

using Runner = std::function<void(const RunInput&, const RunParams&, RunReport&)>;

void run_helly_width(const RunInput& in, const RunParams& params, RunReport& rep)
{
    const Family& f = need_family(in);
    Direction v = direction_for(params, f.dim);
    try {
        WidthWitness w = helly_width_witness(f, v, params.t);
        rep.certificates = Json{{"segment", to_json(w.segment)}, {"direction", to_json(v.coords())}, {"raw_gap", to_json(w.raw_gap)}};
        rep.verified = in_all(f, w.segment) && gap_ok(w.segment, v, params.t);
    } catch (const HypothesisFailed& e) {
        rep.outcome = "hypothesis_failed";
        rep.certificates = Json{{"error", e.what()}, {"subset", indices_json(e.subset())}};
        rep.verified = !e.subset().empty() && thin_meet(f.subfamily(e.subset()).bodies, v, params.t);
    }
}

void run_colorful_width(const RunInput& in, const RunParams& params, RunReport& rep)
{
    auto classes = need_classes(in);
    Direction v = direction_for(params, classes.front().dim);
    ColorfulWidthResult r = colorful_helly_width(classes, v, params.t);
    if (auto* cw = std::get_if<ClassWitness<WidthWitness>>(&r)) {
        rep.certificates = Json{{"class", cw->index}, {"segment", to_json(cw->witness.segment)}};
        rep.verified = in_all(classes[cw->index], cw->witness.segment) && gap_ok(cw->witness.segment, v, params.t);
    } else {
        const auto& rc = std::get<RainbowChoice>(r);
        rep.certificates = Json{{"rainbow", indices_json(rc.indices)}};
        std::vector<ConvexBody> picked;
        for (std::size_t c = 0; c < classes.size(); ++c)
            picked.push_back(classes[c][rc.indices[c]]);
        rep.verified = thin_meet(picked, v, params.t);
    }
}

void run_frac_width(const RunInput& in, const RunParams& params, RunReport& rep)
{
    const Family& f = need_family(in);
    Direction v = direction_for(params, f.dim);
    FractionalWidthResult r = fractional_helly_width(f, v, params.t);
    rep.certificates = Json{{"pair", to_json(r.pair)},
                            {"members", indices_json(r.members)},
                            {"beta", to_json(r.beta_observed)},
                            {"anchor", indices_json(r.anchor)},
                            {"good_subsets", r.good_subsets}};
    rep.verified = members_of(f, r.pair) == r.members && r.beta_observed == Scalar(r.members.size(), f.size()) &&
                   gap_ok(r.pair, v, params.t);
}

void run_frac_diam(const RunInput& in, const RunParams& params, RunReport& rep)
{
    const Family& f = need_family(in);
    FractionalDiameterResult r = fractional_helly_diameter(f, params.delta);
    rep.certificates = Json{{"pair", to_json(r.witness.segment)},
                            {"squared_length", to_json(r.witness.squared_length)},
                            {"members", indices_json(r.members)},
                            {"beta", to_json(r.beta_observed)},
                            {"axis", to_json(r.axis.coords())},
                            {"good_subsets", r.good_subsets},
                            {"captured_subsets", r.captured_subsets}};
    rep.verified = members_of(f, r.witness.segment) == r.members &&
                   r.beta_observed == Scalar(r.members.size(), f.size()) && long_enough(r.witness.segment, params.delta);
}

void run_colorful_diam(const RunInput& in, const RunParams& params, RunReport& rep)
{
    auto classes = need_classes(in);
    ColorfulDiameterResult r = colorful_helly_diameter(classes, params.delta);
    if (auto* cw = std::get_if<ClassWitness<DiameterWitness>>(&r)) {
        rep.certificates = Json{{"class", cw->index}, {"segment", to_json(cw->witness.segment)}};
        rep.verified = in_all(classes[cw->index], cw->witness.segment) && long_enough(cw->witness.segment, params.delta);
    } else {
        const auto& ce = std::get<ColourfulCounterexample>(r);
        rep.certificates = Json{{"rainbow", indices_json(ce.choice.indices)}};
        std::vector<ConvexBody> picked;
        for (std::size_t c = 0; c < classes.size(); ++c)
            picked.push_back(classes[c][ce.choice.indices[c]]);
        ConvexBody meet = intersect(picked);
        rep.verified = is_empty(meet) || diameter(meet).squared < 1;
    }
}

void run_tverberg(const RunInput& in, const RunParams& params, RunReport& rep)
{
    const Family& f = need_family(in);
    TverbergResult r = tverberg_diameter(f, params.m, params.delta);
    rep.certificates = Json{{"parts", parts_json(r.parts)}, {"witness", to_json(r.witness)}, {"axis", to_json(r.axis.coords())}};
    bool ok = r.parts.size() == params.m && partition_ok(r.parts, f.size()) && long_enough(r.witness, params.delta);
    for (const auto& p : r.parts)
        ok = ok && hull_holds(f, p, r.witness);
    rep.verified = ok;
}

void run_selection(const RunInput& in, const RunParams& params, RunReport& rep)
{
    const Family& f = need_family(in);
    SelectionResult r = selection_diameter(f, params.delta);
    rep.certificates = Json{{"witness", to_json(r.witness)}, {"covered", parts_json(r.covered)}, {"lambda", to_json(r.lambda_observed)}};
    bool ok = !r.covered.empty() && long_enough(r.witness, params.delta) &&
              r.lambda_observed == Scalar(r.covered.size()) / Scalar(binomial(f.size(), 2 * f.dim));
    for (const auto& a : r.covered)
        ok = ok && hull_holds(f, a, r.witness);
    rep.verified = ok;
}

void run_net(const RunInput& in, const RunParams& params, RunReport& rep)
{
    const Family& f = need_family(in);
    NetOptions opts;
    opts.exhaustive_cap = params.exhaustive_cap;
    opts.seed = params.seed;
    NetResult r = weak_net_diameter(f, params.epsilon, params.delta, opts);
    rep.certificates = Json{{"elements", segments_json(r.elements)},
                            {"exhaustive", r.exhaustive},
                            {"subfamilies_checked", r.subfamilies_checked}};
    bool ok = std::all_of(r.elements.begin(), r.elements.end(), [&](const Segment& s) { return long_enough(s, params.delta); });
    if (r.exhaustive) {
        for_each_combination(f.size(), r.subset_size, [&](std::span<const std::size_t> sub) {
            std::vector<Point> pts = union_vertices(f, sub);
            ok = ok && std::any_of(r.elements.begin(), r.elements.end(), [&](const Segment& s) { return segment_in_hull(pts, s); });
            return ok;
        });
    } else {
        rep.outcome = "net_heuristic";
    }
    rep.verified = ok;
}

bool transversal_ok(const Family& f, const std::vector<Segment>& elements, const Scalar& delta)
{
    for (const auto& b : f.bodies)
        if (std::none_of(elements.begin(), elements.end(), [&](const Segment& s) { return b.contains(s); }))
            return false;
    return std::all_of(elements.begin(), elements.end(), [&](const Segment& s) { return long_enough(s, delta); });
}

Json pq_json(const PqReport& r)
{
    Json j{{"tau_star", to_json(r.tau_star())},
           {"nu_star", to_json(r.nu_star())},
           {"transversal", segments_json(r.transversal.elements)},
           {"ground_set_size", r.ground.candidates.size()},
           {"enrichments", r.enrichments},
           {"net_exhaustive", r.transversal.net_exhaustive}};
    if (r.packing_bound)
        j["packing_bound"] = Json{{"beta", to_json(r.packing_bound->beta_observed)},
                                  {"holds", r.packing_bound->holds},
                                  {"copies", r.packing_bound->copies}};
    return j;
}

void run_pq(const RunInput& in, const RunParams& params, RunReport& rep)
{
    const Family& f = need_family(in);
    std::size_t k = 2 * f.dim;
    PqReport r = pq_transversal(f, params.p ? params.p : k, params.q ? params.q : k, params.delta);
    rep.certificates = pq_json(r);
    bool bound_ok = !r.packing_bound || r.packing_bound->holds;
    rep.verified = r.tau_star() == r.nu_star() && bound_ok && transversal_ok(f, r.transversal.elements, params.delta);
}

void run_partition(const RunInput& in, const RunParams& params, RunReport& rep)
{
    const Family& f = need_family(in);
    PartitionReport r = partition_large_intersections(f, params.delta);
    rep.certificates = pq_json(r.pq);
    rep.certificates["parts"] = parts_json(r.parts);
    bool ok = partition_ok(r.parts, f.size());
    for (std::size_t i = 0; ok && i < r.parts.size(); ++i) {
        ConvexBody meet = intersect(f.subfamily(r.parts[i]).bodies);
        const Segment& e = r.pq.transversal.elements.at(r.element_of_part[i]);
        ok = meet.contains(e) && long_enough(e, params.delta) && diameter(meet).squared >= (1 - params.delta) * (1 - params.delta);
    }
    rep.verified = ok;
}

void run_extremal(const RunInput&, const RunParams& params, RunReport& rep)
{
    ClaimFamily cf = build_claim_family(params.d, params.k);
    ClaimReport r = verify_claim(cf);
    rep.input_digest = digest(to_json(cf.family));
    rep.certificates = Json{{"d", cf.d},
                            {"k", cf.k},
                            {"bodies", cf.family.size()},
                            {"pairs", cf.pairs.size()},
                            {"all_2d_wide", r.all_2d_wide},
                            {"worst_2d_diam_sq", to_json(r.worst_2d_diam_sq)},
                            {"all_partitions_thin", r.all_partitions_thin},
                            {"worst_part_diam_sq", to_json(r.worst_part_diam_sq)},
                            {"subsets_checked", r.subsets_checked},
                            {"partitions_checked", r.partitions_checked},
                            {"partial", r.partial}};
    rep.verified = r.all_2d_wide && r.all_partitions_thin && !r.partial;
}

void run_scaling(const RunInput&, const RunParams& params, RunReport& rep)
{
    std::vector<ScalingRow> rows = scaling_experiment(params.d, params.deltas, params.trials, params.seed);
    Json table = Json::array();
    for (const auto& r : rows)
        table.push_back(Json{{"delta", to_json(r.delta)}, {"n_observed", r.n_observed}, {"trials", r.trials}});
    rep.certificates = Json{{"rows", table}, {"csv", scaling_csv(rows)}};
    std::vector<ScalingRow> sorted = rows;
    std::sort(sorted.begin(), sorted.end(), [](const ScalingRow& a, const ScalingRow& b) { return a.delta > b.delta; });
    bool monotone = true;
    for (std::size_t i = 1; i < sorted.size(); ++i)
        monotone = monotone && sorted[i].n_observed >= sorted[i - 1].n_observed;
    rep.verified = monotone;
}

void run_generate(const RunInput&, const RunParams& params, RunReport& rep)
{
    if (!params.generator)
        throw ArgumentError("generate needs a generator spec");
    Family f = generate(*params.generator);
    rep.input_digest = digest(to_json(*params.generator));
    rep.certificates = Json{{"spec", to_json(*params.generator)}, {"family", to_json(f)}};
    rep.verified = true;
}

const std::map<std::string, Runner>& runners()
{
    static const std::map<std::string, Runner> table{
        {"generate", run_generate},       {"helly-width", run_helly_width}, {"colorful-width", run_colorful_width},
        {"frac-width", run_frac_width},   {"frac-diam", run_frac_diam},     {"colorful-diam", run_colorful_diam},
        {"tverberg", run_tverberg},       {"selection", run_selection},     {"net", run_net},
        {"pq", run_pq},                   {"partition", run_partition},     {"extremal", run_extremal},
        {"scaling", run_scaling}};
    return table;
}

template <typename E>
void record(RunReport& rep, const char* kind, const E& e)
{
    rep.outcome = kind;
    rep.verified = false;
    rep.certificates = Json{{"error", e.what()}};
}

} // namespace

RunReport run(const std::string& command, const RunInput& input, const RunParams& params)
{
    RunReport rep;
    rep.command = command;
    bool has_input = input.family || !input.classes.empty();
    rep.input_digest = has_input ? digest(to_json(input)) : "none";
    auto start = std::chrono::steady_clock::now();
    try {
        auto it = runners().find(command);
        if (it == runners().end())
            throw ArgumentError("unknown command: " + command);
        it->second(input, params, rep);
    } catch (const PreconditionFailed& e) {
        record(rep, "precondition_failed", e);
        rep.certificates["required"] = e.required();
    } catch (const HypothesisFailed& e) {
        record(rep, "hypothesis_failed", e);
        rep.certificates["subset"] = indices_json(e.subset());
    } catch (const GroundSetInsufficient& e) {
        record(rep, "ground_set_insufficient", e);
        rep.certificates["uncovered"] = indices_json(e.uncovered());
    } catch (const ArgumentError& e) {
        record(rep, "argument_error", e);
    } catch (const Unsupported& e) {
        record(rep, "unsupported", e);
    } catch (const ResolutionError& e) {
        record(rep, "resolution_error", e);
    } catch (const InternalError& e) {
        record(rep, "internal_error", e);
    } catch (const Error& e) {
        record(rep, "error", e);
    }
    if (params.timings)
        rep.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return rep;
}

namespace {

struct TrialCurve
{
    // For each N: every N-1 members wide, and the full squared diameter.
    std::vector<std::pair<bool, Scalar>> by_size;
};

TrialCurve scaling_trial(std::uint64_t seed, std::size_t trial, std::size_t max_pairs)
{
    TrialCurve out;
    for (std::size_t n = 3; n <= max_pairs; ++n) {
        std::mt19937_64 rng(seed ^ (0x9e3779b97f4a7c15ULL * (trial + 1)) ^ (n << 32));
        std::vector<Point> w;
        for (std::size_t j = 0; j < n; ++j) {
            double u = static_cast<double>(rng() >> 11) * 0x1.0p-53 * 0.5;
            double theta = std::numbers::pi * (static_cast<double>(j) + u) / static_cast<double>(n);
            w.push_back(half_sphere_point({std::cos(theta), std::sin(theta)}, 1LL << 20));
        }
        Family fam{2, {}};
        for (std::size_t i = 0; i < n; ++i) {
            std::vector<Point> pts;
            for (std::size_t j = 0; j < n; ++j)
                if (j != i) {
                    pts.push_back(w[j]);
                    pts.push_back(Scalar(-1) * w[j]);
                }
            fam.bodies.push_back(ConvexBody::from_vertices(std::move(pts)));
        }
        bool wide = true;
        for (std::size_t i = 0; i < n && wide; ++i)
            for (std::size_t l = 0; l < n && wide; ++l)
                if (l != i)
                    wide = fam[l].contains(w[i]) && fam[l].contains(Scalar(-1) * w[i]);
        ConvexBody meet = fam[0];
        for (std::size_t i = 1; i < n; ++i)
            meet = intersect_compact(meet, fam[i]);
        out.by_size.emplace_back(wide, diameter(meet).squared);
    }
    return out;
}

} // namespace

std::vector<ScalingRow> scaling_experiment(std::size_t d,
                                           const std::vector<Scalar>& deltas,
                                           std::size_t trials,
                                           std::uint64_t seed,
                                           std::size_t max_pairs)
{
    if (d != 2)
        throw Unsupported("scaling: only d = 2 is supported");
    for (const auto& delta : deltas)
        if (delta <= 0 || delta >= 1)
            throw ArgumentError("scaling: every delta must lie in (0, 1)");
    if (trials == 0)
        return {};

    std::vector<TrialCurve> curves(trials);
    std::size_t workers = std::min(thread_cap(), trials);
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w)
        pool.emplace_back([&, w] {
            for (std::size_t t = w; t < trials; t += workers)
                curves[t] = scaling_trial(seed, t, max_pairs);
        });
    for (auto& th : pool)
        th.join();

    std::vector<ScalingRow> rows;
    for (const auto& delta : deltas) {
        Scalar floor = (1 - delta) * (1 - delta);
        std::size_t best = 0;
        for (const auto& c : curves)
            for (std::size_t i = 0; i < c.by_size.size(); ++i)
                if (c.by_size[i].first && c.by_size[i].second < floor)
                    best = std::max(best, i + 3);
        rows.push_back({delta, best, trials});
    }
    return rows;
}

std::string scaling_csv(const std::vector<ScalingRow>& rows)
{
    std::ostringstream out;
    out << "delta,n_observed,trials\n";
    for (const auto& r : rows)
        out << to_decimal(r.delta) << ',' << r.n_observed << ',' << r.trials << '\n';
    return out.str();
}

} // namespace hellydiam
