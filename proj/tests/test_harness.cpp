#include "generators.hpp"

#include "hellydiam/errors.hpp"
#include "hellydiam/harness.hpp"

#include <doctest.h>

#include <cstdlib>
#include <set>
#include <sstream>

using namespace hellydiam;

namespace {

ConvexBody interval(Scalar lo, Scalar hi)
{
    return ConvexBody::box(Point{lo}, Point{hi});
}

RunInput single(Family f)
{
    RunInput in;
    in.family = std::move(f);
    return in;
}

GeneratorSpec core_spec(std::uint64_t seed, std::size_t n)
{
    GeneratorSpec spec;
    spec.dim = 2;
    spec.count = n;
    spec.seed = seed;
    spec.params["cores"] = 5;
    spec.params["miss"] = 1;
    return spec;
}

} // namespace

TEST_CASE("command list")
{
    const auto& names = command_names();
    std::set<std::string> uniq(names.begin(), names.end());
    CHECK(uniq.size() == names.size());
    CHECK(uniq.count("helly-width") == 1);
    CHECK(uniq.count("scaling") == 1);
    RunReport r = run("no-such-command", RunInput{}, RunParams{});
    CHECK(r.outcome == "argument_error");
    CHECK_FALSE(r.verified);
    CHECK(r.input_digest == "none");
}

TEST_CASE("width commands report verified certificates")
{
    Family f{1, {interval(0, 2), interval(1, 3), interval(Scalar(1, 2), Scalar(5, 2))}};
    RunParams params;
    RunReport w = run("helly-width", single(f), params);
    CHECK(w.outcome == "ok");
    CHECK(w.verified);
    CHECK(segment_from_json(w.certificates.at("segment")) == Segment{Point{1}, Point{2}});

    RunReport fw = run("frac-width", single(f), params);
    CHECK(fw.verified);
    CHECK(fw.certificates.at("members").size() == 3);

    Family apart{1, {interval(0, 1), interval(2, 3)}};
    RunReport bad = run("helly-width", single(apart), params);
    CHECK(bad.outcome == "hypothesis_failed");
    CHECK(bad.verified);

    RunInput classes;
    classes.classes = {Family{1, {interval(0, 1), interval(5, 5)}}, Family{1, {interval(0, 1), interval(5, 5)}}};
    RunReport cw = run("colorful-width", classes, params);
    CHECK(cw.outcome == "ok");
    CHECK(cw.verified);
    CHECK(cw.certificates.contains("rainbow"));

    RunReport wrong = run("helly-width", classes, params);
    CHECK(wrong.outcome == "argument_error");
}

TEST_CASE("diameter commands on a generated family")
{
    Family f = generate(core_spec(5, 8));
    RunParams params;
    RunReport fd = run("frac-diam", single(f), params);
    CHECK(fd.outcome == "ok");
    CHECK(fd.verified);
    CHECK(fd.certificates.contains("axis"));

    RunReport pq = run("pq", single(f), params);
    CHECK(pq.outcome == "ok");
    CHECK(pq.verified);
    CHECK(pq.certificates.at("tau_star") == pq.certificates.at("nu_star"));

    RunReport part = run("partition", single(f), params);
    CHECK(part.verified);

    params.epsilon = Scalar(1, 2);
    RunReport net = run("net", single(f), params);
    CHECK(net.verified);
    CHECK(net.certificates.at("exhaustive") == true);

    RunReport sel = run("selection", single(f), params);
    CHECK(sel.verified);

    RunReport tv = run("tverberg", single(f), params);
    CHECK(tv.outcome == "precondition_failed");
    CHECK(tv.certificates.at("required").get<std::size_t>() > f.size());
}

TEST_CASE("digests follow the input")
{
    Family f = generate(core_spec(1, 5));
    Family g = generate(core_spec(2, 5));
    RunParams params;
    std::string a = run("frac-diam", single(f), params).input_digest;
    CHECK(a == run("pq", single(f), params).input_digest);
    CHECK(a != run("frac-diam", single(g), params).input_digest);
    CHECK(a == digest(to_json(f)));
}

TEST_CASE("input json round trip")
{
    Family f = generate(core_spec(3, 4));
    RunInput in = input_from_json(to_json(f));
    REQUIRE(in.family);
    CHECK(to_json(*in.family) == to_json(f));
    CHECK(in.classes.empty());

    RunInput classes;
    classes.classes = {f, generate(core_spec(4, 3))};
    Json j = to_json(classes);
    CHECK(j.contains("classes"));
    RunInput back = input_from_json(j);
    CHECK_FALSE(back.family);
    REQUIRE(back.classes.size() == 2);
    CHECK(to_json(back) == j);
}

TEST_CASE("generate is deterministic and validates its spec")
{
    RunParams params;
    params.generator = core_spec(9, 6);
    RunReport a = run("generate", RunInput{}, params);
    RunReport b = run("generate", RunInput{}, params);
    CHECK(a.verified);
    CHECK(a.certificates == b.certificates);
    CHECK(family_from_json(a.certificates.at("family")).size() == 6);

    params.generator->seed = 10;
    CHECK(run("generate", RunInput{}, params).certificates != a.certificates);

    RunParams none;
    CHECK(run("generate", RunInput{}, none).outcome == "argument_error");
    CHECK_THROWS_AS(parse_shape("blobs"), ArgumentError);
    for (Shape s : {Shape::Boxes, Shape::RandomHalfspaces, Shape::ShiftedCore})
        CHECK(parse_shape(shape_name(s)) == s);
}

TEST_CASE("extremal command on the small claim")
{
    RunParams params;
    params.d = 2;
    params.k = 1;
    RunReport r = run("extremal", RunInput{}, params);
    CHECK(r.outcome == "ok");
    CHECK(r.verified);
    CHECK(r.certificates.at("bodies") == 5);
    CHECK(r.input_digest != "none");
    params.d = 1;
    CHECK(run("extremal", RunInput{}, params).outcome == "unsupported");
}

TEST_CASE("scaling rows, csv and errors")
{
    std::vector<Scalar> deltas{Scalar(1, 2), Scalar(1, 8)};
    auto rows = scaling_experiment(2, deltas, 1, 3, 12);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].trials == 1);
    CHECK(rows[1].n_observed >= rows[0].n_observed);

    std::string csv = scaling_csv(rows);
    std::istringstream lines(csv);
    std::string header, first;
    std::getline(lines, header);
    std::getline(lines, first);
    CHECK(header == "delta,n_observed,trials");
    CHECK(first.rfind("0.5,", 0) == 0);

    CHECK_THROWS_AS(scaling_experiment(3, deltas, 1, 0), Unsupported);
    CHECK_THROWS_AS(scaling_experiment(2, {Scalar(1)}, 1, 0), ArgumentError);
    CHECK(scaling_experiment(2, deltas, 0, 0).empty());

    RunParams params;
    params.trials = 1;
    RunReport r = run("scaling", RunInput{}, params);
    CHECK(r.verified);
    CHECK(r.certificates.at("rows").size() == 4);
}

TEST_CASE("thread cap reads the environment")
{
    ::unsetenv("HELLYDIAM_THREADS");
    CHECK(thread_cap() == 1);
    ::setenv("HELLYDIAM_THREADS", "3", 1);
    CHECK(thread_cap() == 3);
    ::setenv("HELLYDIAM_THREADS", "zero", 1);
    CHECK(thread_cap() == 1);
    ::setenv("HELLYDIAM_THREADS", "-2", 1);
    CHECK(thread_cap() == 1);
    ::unsetenv("HELLYDIAM_THREADS");
}

TEST_CASE("report json carries timings only when asked")
{
    Family f{1, {interval(0, 2)}};
    RunParams params;
    CHECK_FALSE(run("helly-width", single(f), params).to_json().contains("timings"));
    params.timings = true;
    Json j = run("helly-width", single(f), params).to_json();
    CHECK(j.contains("timings"));
    CHECK(j.at("verified") == true);
    CHECK(j.at("command") == "helly-width");
}
