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


#include "logcon/suites.hpp"

#include <chrono>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace logcon {

namespace {

Vec vec2(double a, double b)
{
    Vec v(2);
    v << a, b;
    return v;
}

Mat random_matrix(int rows, int cols, CounterRng& rng)
{
    Mat m(rows, cols);
    for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = rng.normal();
    return m;
}

Mat random_covariance(int n, CounterRng& rng, double scale = 0.5)
{
    const Mat l = random_matrix(n, n, rng);
    return scale * (l * l.transpose() / n + 0.2 * Mat::Identity(n, n));
}

ConvexSet probe_box(int n, double half) { return ConvexSet::box(Vec::Constant(n, -half), Vec::Constant(n, half)); }

std::vector<Vec> random_points(int count, int n, double spread, CounterRng& rng)
{
    std::vector<Vec> pts;
    for (int i = 0; i < count; ++i) pts.push_back(spread * rng.normal_vector(n));
    return pts;
}

Concept random_affine(int n, CounterRng& rng)
{
    Vec a(n);
    for (int i = 0; i < n; ++i) a[i] = rng.uniform(-1.0, 1.0);
    const double r = rng.uniform(0.1, 1.0);
    a *= r / std::max(a.cwiseAbs().sum(), 1e-12);
    const double low = a.cwiseMin(0.0).sum();
    const double offset = -low + rng.uniform() * (1.0 - r);
    return affine(Space::of(ConvexSet::unit_cube(n)), a, offset);
}

template <class Check>
void add(SuiteResult& out, bool expect_pass, Check&& check)
{
    const auto start = std::chrono::steady_clock::now();
    CheckReport report = check();
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    out.entries.push_back({std::move(report), expect_pass, secs});
}

std::size_t trials_or(const SuiteOptions& o, std::size_t fallback) { return o.trials.value_or(fallback); }

CheckOptions options_for(const SuiteOptions& o, std::size_t trials, std::uint64_t salt, double tol = 1e-9)
{
    CheckOptions c;
    c.trials = trials;
    c.seed = mix64(o.seed ^ salt);
    c.tol = tol;
    return c;
}

SuiteResult concepts_suite(const SuiteOptions& o)
{
    SuiteResult out;
    out.suite = "concepts";
    const std::size_t trials = trials_or(o, 10000);

    add(out, false, [&] {
        const RemarkValues rv = counterexample_remark();
        CheckOptions remark = options_for(o, trials, 0x5e3a, 0.0);
        remark.probes.push_back(Triple{Vec::Zero(2), Vec::Ones(2), 0.5});
        CheckReport r = check_quasi_concave(remark_tensor(), ConvexSet::unit_cube(2), remark);
        r.values["v00"] = rv.v00;
        r.values["v11"] = rv.v11;
        r.values["vmid"] = rv.vmid;
        return r;
    });
    add(out, false, [&] { return check_log_concave(remark_d(), ConvexSet::unit_cube(1), options_for(o, trials, 0xd)); });
    add(out, true, [&] { return check_quasi_concave(remark_c(), ConvexSet::unit_cube(1), options_for(o, trials, 0xc)); });

    const auto cases = seeded_concepts(o.seed, 20);
    for (std::size_t i = 0; i < cases.size(); ++i) {
        add(out, true, [&] { return check_log_concave(cases[i].value, cases[i].region, options_for(o, trials, 0x100 + i)); });
        add(out, true, [&] { return check_quasi_concave(cases[i].value, cases[i].region, options_for(o, trials, 0x100 + i)); });
    }
    for (std::size_t i = 0; i < 10; ++i) {
        const ConceptCase t = tensor_case(cases[i], cases[i + 10]);
        add(out, true, [&] { return check_log_concave(t.value, t.region, options_for(o, trials, 0x200 + i)); });
    }
    add(out, true, [&] { return check_t_cut_convexity(raw(cases[3].value), cases[3].region, options_for(o, trials, 0x7c)); });
    return out;
}

SuiteResult channels_suite(const SuiteOptions& o)
{
    SuiteResult out;
    out.suite = "channels";
    const std::size_t trials = trials_or(o, 1000);
    std::size_t k = 0;
    for (const auto& s : reference_states(o.seed))
        add(out, true, [&] { return check_measure_log_concave(s.value, s.region, options_for(o, trials, 0x300 + k++)); });
    EvalOptions eval;
    eval.seed = mix64(o.seed ^ 0xe7a1);
    eval.mc_samples = 4000;
    for (const auto& c : reference_channels(o.seed))
        add(out, true, [&] { return check_channel_log_concave(c.value, c.region, options_for(o, trials, 0x400 + k++), eval); });
    add(out, false, [&] { return check_channel_log_concave(square_channel(), ConvexSet::unit_cube(1), options_for(o, trials, 0x5a), Integrator{}); });
    add(out, true, [&] { return check_gauss_composition(mix64(o.seed ^ 0x6a55), 10, 100000); });
    return out;
}

SuiteResult pl_suite(const SuiteOptions& o)
{
    SuiteResult out;
    out.suite = "pl";
    for (const auto& c : seeded_pl_cases(o.seed, 10)) add(out, true, [&] { return check_prekopa_leindler(c.g, c.h, c.box, c.p, 1e-3); });

    const RawFunction unit{1, [](const Vec& x) { return x[0] >= 0.0 && x[0] <= 1.0 ? 1.0 : 0.0; }, "1[0,1]"};
    add(out, true, [&] { return check_prekopa_leindler(unit, unit, ConvexSet::box(Vec::Constant(1, -0.5), Vec::Constant(1, 1.5)), 0.5, 1e-3); });

    const std::size_t trials = trials_or(o, 500);
    const double p = 0.4;
    const ConvexSet square = probe_box(2, 2.0);
    Integrator integ;
    integ.nodes = 32;
    integ.samples = 20000;
    const State lebesgue = uniform(square);
    auto bump = [](Vec centre, const char* name) {
        return RawFunction{2, [centre](const Vec& x) { return std::exp(-0.5 * (x - centre).squaredNorm()); }, name};
    };
    const Vec u = vec2(0.5, -0.3), v = vec2(-0.6, 0.4);
    const RawFunction g = bump(u, "g"), h = bump(v, "h"), f = bump(p * u + (1 - p) * v, "f");
    add(out, true, [&] { return check_extended_pl(lebesgue, lebesgue, lebesgue, f, g, h, p, square, options_for(o, trials, 0x901), integ); });

    const RawFunction one{2, [](const Vec&) { return 1.0; }, "1"};
    const State point = dirac(vec2(0.2, 0.1));
    add(out, true, [&] { return check_extended_pl(point, point, point, one, one, one, p, square, options_for(o, trials, 0x902), integ); });

    CounterRng rng(mix64(o.seed ^ 0x903));
    const Mat cov = random_covariance(2, rng, 0.3);
    const Vec a = vec2(0.4, 0.2), b = vec2(-0.3, -0.1);
    const State nu = gaussian(a, cov), omega = gaussian(b, cov), mu = gaussian(p * a + (1 - p) * b, cov);
    add(out, true, [&] { return check_extended_pl(mu, nu, omega, f, g, h, p, square, options_for(o, trials, 0x904), integ); });
    return out;
}

SuiteResult markov_suite(const SuiteOptions& o)
{
    SuiteResult out;
    out.suite = "markov";
    for (int d = 1; d <= 4; ++d) add(out, true, [&] { return check_markov_laws(d, trials_or(o, 100), mix64(o.seed + d)); });
    return out;
}

}  // namespace

bool SuiteResult::ok() const noexcept
{
    for (const auto& e : entries)
        if (!e.ok()) return false;
    return true;
}

Json SuiteResult::to_json() const
{
    Json list = Json::array();
    for (const auto& e : entries) {
        Json j = e.report.to_json();
        j["expected"] = e.expect_pass ? "pass" : "fail";
        j["ok"] = e.ok();
        j["seconds"] = e.seconds;
        list.push_back(std::move(j));
    }
    return {{"suite", suite}, {"ok", ok()}, {"reports", list}};
}

std::string SuiteResult::to_text() const
{
    std::ostringstream os;
    std::size_t good = 0;
    for (const auto& e : entries) {
        good += e.ok();
        os << (e.ok() ? "ok   " : "FAIL ") << e.report.to_text();
        if (!e.expect_pass) os << "\n  (expected to fail)";
        os << "\n  time: " << e.seconds << " s";
        os << '\n';
    }
    os << "suite " << suite << ": " << good << "/" << entries.size() << " as expected\n";
    return os.str();
}

const std::vector<std::string>& suite_names()
{
    static const std::vector<std::string> names{"concepts", "channels", "pl", "markov", "all"};
    return names;
}

SuiteResult run_suite(const std::string& name, const SuiteOptions& options)
{
    if (name == "concepts") return concepts_suite(options);
    if (name == "channels") return channels_suite(options);
    if (name == "pl") return pl_suite(options);
    if (name == "markov") return markov_suite(options);
    if (name == "all") {
        SuiteResult all;
        all.suite = "all";
        for (const char* s : {"concepts", "channels", "pl", "markov"}) {
            auto part = run_suite(s, options);
            for (auto& e : part.entries) all.entries.push_back(std::move(e));
        }
        return all;
    }
    throw std::invalid_argument("unknown suite '" + name + "'");
}

std::vector<ConceptCase> seeded_concepts(std::uint64_t seed, int count)
{
    std::vector<ConceptCase> out;
    const CounterRng base(seed, 0xc0c);
    for (int i = 0; i < count; ++i) {
        CounterRng rng = base.split(static_cast<std::uint64_t>(i));
        const int n = 1 + static_cast<int>(rng.next_u64() % 3);
        const Space rn = Space::reals(n);
        const ConvexSet region = probe_box(n, 2.0);
        const double sigma = rng.uniform(0.1, 1.0);
        switch (i % 8) {
        case 0: out.push_back({crisp(ConvexSet::ball(0.5 * rng.normal_vector(n), rng.uniform(0.3, 1.5))), region}); break;
        case 1: {
            const Vec lo = 0.5 * rng.normal_vector(n) - Vec::Constant(n, 0.5);
            out.push_back({crisp(ConvexSet::box(lo, lo + Vec::Constant(n, rng.uniform(0.2, 2.0)))), region});
            break;
        }
        case 2: out.push_back({gauss_fuzz(rn, ConvexSet::ball(0.5 * rng.normal_vector(n), rng.uniform(0.0, 0.8)), sigma), region}); break;
        case 3: out.push_back({gauss_fuzz(rn, hull_of(random_points(3 + i % 3, n, 0.8, rng)), sigma), region}); break;
        case 4: out.push_back({random_affine(n, rng), ConvexSet::unit_cube(n)}); break;
        case 5: out.push_back({exponential(rng.uniform(1.0, 6.0)), ConvexSet::unit_cube(1)}); break;
        case 6: {
            const Concept a = gauss_fuzz(Space::reals(1), ConvexSet::point(Vec::Constant(1, rng.normal())), sigma);
            const Concept b = crisp(ConvexSet::ball(rng.normal_vector(n), rng.uniform(0.5, 1.5)));
            out.push_back({tensor(a, b), probe_box(n + 1, 2.0)});
            break;
        }
        default: {
            const Concept a = gauss_fuzz(rn, ConvexSet::ball(0.5 * rng.normal_vector(n), 0.3), sigma);
            const Concept b = gauss_fuzz(rn, hull_of(random_points(3, n, 0.8, rng)), rng.uniform(0.1, 1.0));
            out.push_back({multiply(a, b), region});
            break;
        }
        }
    }
    return out;
}

ConceptCase tensor_case(const ConceptCase& a, const ConceptCase& b)
{
    return {tensor(a.value, b.value), ConvexSet::product(a.region, b.region)};
}

std::vector<StateCase> reference_states(std::uint64_t seed)
{
    CounterRng rng(seed, 0x57a7e);
    const Vec mean = 0.5 * rng.normal_vector(2);
    const Mat cov = random_covariance(2, rng);
    std::vector<StateCase> out;
    out.push_back({gaussian(mean, cov), ConvexSet::box(mean - Vec::Constant(2, 3.0), mean + Vec::Constant(2, 3.0))});
    const ConvexSet rect = ConvexSet::box(vec2(0.0, 0.0), vec2(1.0, 2.0));
    out.push_back({uniform(rect), ConvexSet::box(vec2(-0.5, -0.5), vec2(1.5, 2.5))});
    out.push_back({dirac(vec2(0.3, -0.2)), probe_box(2, 1.0)});
    out.push_back({laplace(0.5, 1.2), ConvexSet::box(Vec::Constant(1, -4.0), Vec::Constant(1, 5.0))});
    out.push_back({logistic(-0.3, 0.7), probe_box(1, 4.0)});
    return out;
}

std::vector<ChannelCase> reference_channels(std::uint64_t seed)
{
    CounterRng rng(seed, 0xc4a2);
    const Space r1 = Space::reals(1), r2 = Space::reals(2);
    const ConvexSet region = probe_box(2, 1.0);
    const Mat a = random_matrix(2, 2, rng);
    const Vec c = rng.normal_vector(2);
    const Channel map = crisp_affine(a, c);
    const Channel noisy = noisy_affine(random_matrix(2, 2, rng), rng.normal_vector(2), gaussian(Vec::Zero(2), random_covariance(2, rng)));
    const Channel upd = update(gauss_fuzz(r2, ConvexSet::ball(Vec::Zero(2), 0.3), 0.5));
    const Channel noisy1 = noisy_affine(Mat::Constant(1, 1, 0.7), Vec::Constant(1, 0.2), gaussian(Vec::Zero(1), Mat::Constant(1, 1, 0.3)));
    const Channel map1 = crisp_affine(Mat::Constant(1, 1, -1.3), Vec::Constant(1, 0.4));
    return {{identity(r2), region},
            {copy(r2), region},
            {discard(r2), region},
            {upd, region},
            {map, region},
            {noisy, region},
            {then(map, noisy), region},
            {then(noisy, upd), region},
            {then(copy(r1), tensor(noisy1, map1)), probe_box(1, 1.0)},
            {tensor(noisy1, map1), region},
            {tensor(upd, identity(r1)), probe_box(3, 1.0)}};
}

CheckReport check_gauss_composition(std::uint64_t seed, int pairs, std::size_t samples)
{
    CheckReport r;
    r.name = "gauss closed form vs monte carlo";
    r.seed = seed;
    r.tolerance = 0.0;
    double worst_mean_z = 0.0, worst_cov_z = 0.0;
    const CounterRng base(seed);
    for (int k = 0; k < pairs; ++k) {
        CounterRng rng = base.split(static_cast<std::uint64_t>(k));
        const int d = 1 + static_cast<int>(rng.next_u64() % 3);
        const int m = 1 + static_cast<int>(rng.next_u64() % 3);
        const int n = 1 + static_cast<int>(rng.next_u64() % 3);
        const Channel f = noisy_affine(random_matrix(m, d, rng), rng.normal_vector(m), gaussian(Vec::Zero(m), random_covariance(m, rng)));
        const Channel g = noisy_affine(random_matrix(n, m, rng), rng.normal_vector(n), gaussian(Vec::Zero(n), random_covariance(n, rng)));
        const auto closed = gauss_affine(then(f, g));
        if (!closed) throw std::logic_error("gauss composition: no closed form for a Gaussian pair");
        const Vec x = rng.normal_vector(d);
        const Vec mean = closed->m * x + closed->c;
        const Mat& cov = closed->sigma;

        CounterRng draws = base.split(0x10000 + static_cast<std::uint64_t>(k));
        Vec sum = Vec::Zero(n);
        Mat outer = Mat::Zero(n, n);
        const State first = apply(f, x);
        std::vector<Vec> ys;
        ys.reserve(samples);
        for (std::size_t i = 0; i < samples; ++i) {
            const Vec y1 = sample_one(first, draws);
            ys.push_back(sample_one(apply(g, y1), draws));
            sum += ys.back();
        }
        const double count = static_cast<double>(samples);
        const Vec mc_mean = sum / count;
        for (const Vec& y : ys) outer += (y - mc_mean) * (y - mc_mean).transpose();
        const Mat mc_cov = outer / (count - 1.0);

        for (int i = 0; i < n; ++i) {
            const double se = std::sqrt(cov(i, i) / count);
            const double z = std::abs(mc_mean[i] - mean[i]) / se;
            worst_mean_z = std::max(worst_mean_z, z);
            if (z > 4.0) r.witnesses.push_back(Witness{{x}, 0.0, mc_mean[i], mean[i], z - 4.0, "mean entry " + std::to_string(i)});
            for (int j = 0; j < n; ++j) {
                const double se_c = std::sqrt((cov(i, i) * cov(j, j) + cov(i, j) * cov(i, j)) / count);
                const double zc = std::abs(mc_cov(i, j) - cov(i, j)) / se_c;
                worst_cov_z = std::max(worst_cov_z, zc);
                if (zc > 6.0)
                    r.witnesses.push_back(Witness{{x}, 0.0, mc_cov(i, j), cov(i, j), zc - 6.0,
                                                  "covariance entry " + std::to_string(i) + "," + std::to_string(j)});
            }
        }
        ++r.trials;
    }
    r.values["worst_mean_z"] = worst_mean_z;
    r.values["worst_cov_z"] = worst_cov_z;
    r.worst_violation = std::max(0.0, std::max(worst_mean_z - 4.0, worst_cov_z - 6.0));
    r.notes.push_back("mean within 4 stderr, covariance within 6 stderr, " + std::to_string(samples) + " draws per pair");
    r.verdict = r.witnesses.empty() ? Verdict::pass : Verdict::fail;
    return r;
}

std::vector<PlCase> seeded_pl_cases(std::uint64_t seed, int count)
{
    std::vector<PlCase> out;
    const CounterRng base(seed, 0x91);
    const ConvexSet box = ConvexSet::box(Vec::Constant(1, -4.0), Vec::Constant(1, 4.0));
    auto bump = [](double m, double s) {
        return RawFunction{1, [m, s](const Vec& x) { return std::exp(-0.5 * (x[0] - m) * (x[0] - m) / (s * s)); },
                           "gauss(" + std::to_string(m) + "," + std::to_string(s) + ")"};
    };
    auto indicator = [](double lo, double hi) {
        return RawFunction{1, [lo, hi](const Vec& x) { return x[0] >= lo && x[0] <= hi ? 1.0 : 0.0; },
                           "1[" + std::to_string(lo) + "," + std::to_string(hi) + "]"};
    };
    for (int i = 0; i < count; ++i) {
        CounterRng rng = base.split(static_cast<std::uint64_t>(i));
        auto random_bump = [&] { return bump(rng.uniform(-1.5, 1.5), rng.uniform(0.3, 1.0)); };
        auto random_indicator = [&] {
            const double lo = rng.uniform(-3.0, 1.0);
            return indicator(lo, lo + rng.uniform(0.3, 2.0));
        };
        const double p = rng.uniform(0.2, 0.8);
        switch (i % 3) {
        case 0: out.push_back({random_bump(), random_bump(), box, p}); break;
        case 1: out.push_back({random_bump(), random_indicator(), box, p}); break;
        default: out.push_back({random_indicator(), random_indicator(), box, p}); break;
        }
    }
    return out;
}

}  // namespace logcon
