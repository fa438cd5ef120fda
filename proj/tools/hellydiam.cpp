// hellydiam: command-line front end. The report goes to stdout; --output
// receives the family (generate), the CSV table (scaling) or the report.

#include "hellydiam/errors.hpp"
#include "hellydiam/harness.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace hellydiam;

namespace {

Json read_json(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ArgumentError("cannot open " + path);
    return Json::parse(in);
}

std::vector<Scalar> split_scalars(const std::string& text)
{
    std::vector<Scalar> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
        out.push_back(parse_scalar(item));
    return out;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Quantitative Helly, Tverberg and (p,q) certificates for rational polytopes"};
    std::string command, input, output, delta = "1/4", epsilon = "1/2", direction, t = "1", deltas = "1/2,1/4,1/8,1/16";
    std::string shape = "shifted-core";
    std::vector<std::string> gen_params;
    RunParams params;
    std::size_t dim = 2, count = 6;

    app.add_option("command", command, "Command to run")->required()->check(CLI::IsMember(command_names()));
    app.add_option("--input", input, "Family JSON ({\"dim\",\"bodies\"} or {\"classes\": [...]})");
    app.add_option("--output", output, "Where to write the family, CSV table or report");
    app.add_option("--seed", params.seed, "Seed for generators, heuristics and scaling trials");
    app.add_option("--delta", delta, "Loss parameter, n/d");
    app.add_option("--epsilon", epsilon, "Net parameter, n/d");
    app.add_option("--p", params.p, "p of the (p,q) condition (default 2d)");
    app.add_option("--q", params.q, "q of the (p,q) condition (default 2d)");
    app.add_option("--m", params.m, "Tverberg part count");
    app.add_option("--exhaustive-cap", params.exhaustive_cap, "Largest family searched exhaustively by the net");
    app.add_option("--direction", direction, "Width direction, comma separated (default e1)");
    app.add_option("--t", t, "Width threshold");
    app.add_option("--d", params.d, "Dimension for extremal and scaling");
    app.add_option("--k", params.k, "Part count for extremal");
    app.add_option("--deltas", deltas, "Comma separated delta grid for scaling");
    app.add_option("--trials", params.trials, "Scaling trials");
    app.add_flag("--timings", params.timings, "Add wall-clock timings to the report");
    app.add_flag("--verify", "Accepted for compatibility; every command verifies");
    app.add_option("--dim", dim, "generate: dimension");
    app.add_option("--count", count, "generate: number of bodies");
    app.add_option("--shape", shape, "generate: boxes, random-halfspaces or shifted-core");
    app.add_option("--param", gen_params, "generate: shape parameter key=value (repeatable)");

    CLI11_PARSE(app, argc, argv);

    try {
        params.delta = parse_scalar(delta);
        params.epsilon = parse_scalar(epsilon);
        params.t = parse_scalar(t);
        params.deltas = split_scalars(deltas);
        if (!direction.empty())
            params.direction = Direction(split_scalars(direction));

        RunInput in;
        if (!input.empty())
            in = input_from_json(read_json(input));

        if (command == "generate") {
            GeneratorSpec spec;
            spec.dim = dim;
            spec.count = count;
            spec.shape = parse_shape(shape);
            spec.seed = params.seed;
            for (const auto& kv : gen_params) {
                auto eq = kv.find('=');
                if (eq == std::string::npos)
                    throw ArgumentError("--param expects key=value");
                spec.params[kv.substr(0, eq)] = parse_scalar(kv.substr(eq + 1));
            }
            params.generator = spec;
        }

        RunReport rep = run(command, in, params);
        std::string report = rep.to_json().dump(2);
        std::cout << report << '\n';
        if (!output.empty()) {
            std::ofstream out(output);
            if (command == "generate" && rep.outcome == "ok")
                out << rep.certificates.at("family").dump() << '\n';
            else if (command == "scaling" && rep.outcome == "ok")
                out << rep.certificates.at("csv").get<std::string>();
            else
                out << report << '\n';
        }
        return rep.verified ? 0 : 1;
    } catch (const std::exception& e) {
        std::cerr << "hellydiam: " << e.what() << '\n';
        return 2;
    }
}
