// Copyright 2026 The logcon Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "logcon/dsl.hpp"
#include "logcon/foodspace.hpp"
#include "logcon/grid_io.hpp"
#include "logcon/suites.hpp"

namespace {

constexpr int kUsageError = 2;

std::string read_file(const std::string& path)
{
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("cannot open " + path);
    std::ostringstream os;
    os << is.rdbuf();
    return os.str();
}

logcon::Vec parse_point(const std::string& text)
{
    std::vector<double> xs;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        const double v = std::stod(item, &used);
        if (item.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument("bad coordinate '" + item + "'");
        xs.push_back(v);
    }
    return Eigen::Map<const logcon::Vec>(xs.data(), static_cast<Eigen::Index>(xs.size()));
}

int cmd_verify(const std::string& suite, std::uint64_t seed, std::optional<std::size_t> trials, const std::string& out_dir, bool json)
{
    bool known = false;
    for (const auto& s : logcon::suite_names()) known |= s == suite;
    if (!known) {
        std::cerr << "logcon verify: unknown suite '" << suite << "' (expected one of";
        for (const auto& s : logcon::suite_names()) std::cerr << ' ' << s;
        std::cerr << ")\n";
        return kUsageError;
    }
    logcon::SuiteOptions options;
    options.seed = seed;
    options.trials = trials;
    const auto start = std::chrono::steady_clock::now();
    const logcon::SuiteResult result = logcon::run_suite(suite, options);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const std::string text = result.to_text();
    const std::string doc = result.to_json().dump(2);
    if (json) std::cout << doc << '\n';
    else std::cout << text << "elapsed " << secs << " s\n";
    if (!out_dir.empty()) {
        std::ofstream(out_dir + "/verify_" + suite + ".json") << doc << '\n';
        std::ofstream(out_dir + "/verify_" + suite + ".txt") << text;
    }
    return result.ok() ? 0 : 1;
}

int cmd_eval(const std::string& file, const std::string& name, bool json, const std::string& at, bool ast, std::uint64_t seed,
             std::size_t samples)
{
    namespace dsl = logcon::dsl;
    std::string text;
    try {
        text = read_file(file);
    } catch (const std::exception& e) {
        std::cerr << "logcon eval: " << e.what() << '\n';
        return 1;
    }
    try {
        const dsl::Program program = dsl::parse(text);
        if (ast) {
            std::cout << dsl::ast_json(program).dump(2) << '\n';
            return 0;
        }
        logcon::EvalOptions options;
        options.seed = seed;
        options.mc_samples = samples;
        dsl::Evaluator ev(dsl::typecheck(program), options);
        std::vector<std::string> names = name.empty() ? ev.names() : std::vector<std::string>{name};
        if (!name.empty() && !ev.program().types.count(name)) {
            std::cerr << file << ": no declaration named '" << name << "'\n";
            return 1;
        }
        logcon::Json all = logcon::Json::object();
        for (const auto& n : names) {
            const dsl::Value& v = ev.value(n);
            const std::string type = dsl::to_string(ev.program().types.at(n));
            if (!at.empty()) {
                const std::string shown = dsl::evaluate_at(v, parse_point(at), options);
                if (json) all[n] = {{"type", type}, {"at", at}, {"value", shown}};
                else std::cout << n << "(" << at << ") = " << shown << '\n';
            } else if (json) {
                all[n] = dsl::to_json(v);
                all[n]["type"] = type;
            } else {
                std::cout << n << " : " << type << " = " << dsl::describe(v) << '\n';
            }
        }
        if (json) std::cout << all.dump(2) << '\n';
        return 0;
    } catch (const dsl::SyntaxError& e) {
        std::cerr << file << ": " << e.what() << '\n';
    } catch (const dsl::TypeError& e) {
        std::cerr << file << ": " << e.what() << '\n';
    } catch (const dsl::EvalError& e) {
        std::cerr << file << ": " << e.what() << '\n';
    } catch (const std::exception& e) {
        std::cerr << file << ": " << e.what() << '\n';
    }
    return 1;
}

int cmd_demo(const std::string& config_path, const std::string& out, const std::vector<std::string>& settings, int grid,
             std::optional<std::uint64_t> seed, bool no_tasting)
{
    try {
        logcon::DemoConfig config;
        if (!config_path.empty()) {
            std::ifstream is(config_path);
            if (!is) throw std::runtime_error("cannot open " + config_path);
            config = logcon::parse_demo_config(is);
        }
        for (const auto& s : settings) {
            const auto eq = s.find('=');
            if (eq == std::string::npos) throw std::invalid_argument("--set expects key=value, got '" + s + "'");
            logcon::apply_setting(config, s.substr(0, eq), s.substr(eq + 1));
        }
        if (!out.empty()) config.output_dir = out;
        if (grid > 0) config.grid = grid;
        if (seed) config.seed = *seed;
        if (no_tasting) config.tasting = false;
        const auto start = std::chrono::steady_clock::now();
        const auto result = logcon::run_demo(config);
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        for (const auto& f : result.files) std::cout << f << '\n';
        std::cout << result.files.size() << " files in " << config.output_dir << ", " << secs << " s\n";
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "logcon demo: " << e.what() << '\n';
        return 1;
    }
}

int cmd_render(const std::string& csv, const std::string& pgm)
{
    try {
        logcon::write_pgm_file(pgm, logcon::read_csv_file(csv));
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "logcon render: " << csv << ": " << e.what() << '\n';
        return 1;
    }
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"logcon: log-concave fuzzy concepts, states and channels"};
    app.require_subcommand(1);

    auto* verify = app.add_subcommand("verify", "run a verification suite (concepts, channels, pl, markov, all)");
    std::string suite;
    std::uint64_t vseed = 1;
    std::optional<std::size_t> trials;
    std::string vout;
    bool vjson = false;
    verify->add_option("suite", suite, "suite name")->required();
    verify->add_option("--seed", vseed, "random seed");
    verify->add_option("--trials", trials, "trials per check");
    verify->add_option("--out", vout, "directory for JSON and text reports");
    verify->add_flag("--json", vjson, "print the JSON report instead of text");

    auto* eval = app.add_subcommand("eval", "evaluate a .lcon program");
    std::string file, name, at;
    bool ejson = false, ast = false;
    std::uint64_t eseed = 0x5eed;
    std::size_t samples = 10000;
    eval->add_option("file", file, "program file")->required();
    eval->add_option("--name,--eval", name, "declaration to evaluate (default: all)");
    eval->add_option("--at", at, "evaluate at a comma-separated point");
    eval->add_flag("--json", ejson, "print JSON");
    eval->add_flag("--ast-json", ast, "print the parsed AST as JSON and stop");
    eval->add_option("--seed", eseed, "Monte Carlo seed");
    eval->add_option("--samples", samples, "Monte Carlo sample count");

    auto* demo = app.add_subcommand("demo", "reproduce the food-space grids");
    std::string config, out;
    std::vector<std::string> settings;
    int grid = 0;
    std::optional<std::uint64_t> dseed;
    bool no_tasting = false;
    demo->add_option("--config", config, "key=value configuration file");
    demo->add_option("--out", out, "output directory");
    demo->add_option("--grid", grid, "grid resolution per axis");
    demo->add_option("--seed", dseed, "random seed");
    demo->add_option("--set", settings, "override a configuration key (key=value)");
    demo->add_flag("--no-tasting", no_tasting, "skip the tasting-yellow grids");

    auto* render = app.add_subcommand("render", "convert a CSV grid into a PGM image");
    std::string csv, pgm;
    render->add_option("csv", csv, "input grid")->required();
    render->add_option("pgm", pgm, "output image")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kUsageError;
    }

    if (*verify) return cmd_verify(suite, vseed, trials, vout, vjson);
    if (*eval) return cmd_eval(file, name, ejson, at, ast, eseed, samples);
    if (*demo) return cmd_demo(config, out, settings, grid, dseed, no_tasting);
    if (*render) return cmd_render(csv, pgm);
    return kUsageError;
}
