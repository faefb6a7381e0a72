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


#include "logcon/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iomanip>
#include <limits>
#include <sstream>

namespace logcon {

namespace {

constexpr double kFloor = 1e-300;
constexpr std::size_t kMaxWitnesses = 5;

double floored(double v) { return v < kFloor ? 0.0 : v; }

std::string short_number(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

double geometric(double a, double b, double p)
{
    if (a == 0.0 && p > 0.0) return 0.0;
    if (b == 0.0 && p < 1.0) return 0.0;
    return std::pow(a, p) * std::pow(b, 1.0 - p);
}

void record(CheckReport& r, Witness w)
{
    r.worst_violation = std::max(r.worst_violation, w.violation);
    if (w.violation <= r.tolerance) return;
    r.witnesses.push_back(std::move(w));
    std::sort(r.witnesses.begin(), r.witnesses.end(), [](const Witness& a, const Witness& b) { return a.violation > b.violation; });
    if (r.witnesses.size() > kMaxWitnesses) r.witnesses.resize(kMaxWitnesses);
}

void finish(CheckReport& r)
{
    if (r.verdict == Verdict::premise_unmet) return;
    r.verdict = r.witnesses.empty() && r.worst_violation <= r.tolerance ? Verdict::pass : Verdict::fail;
}

void require_bounded(const ConvexSet& region, const char* what)
{
    if (!region.is_bounded()) throw std::invalid_argument(std::string(what) + ": probe region must be bounded");
}

void require_trials(const CheckOptions& o, const char* what)
{
    if (o.trials < 1 && o.probes.empty()) throw std::invalid_argument(std::string(what) + ": need at least one trial");
}

using Comparison = std::function<std::pair<double, double>(double fx, double fy, double fz, double p)>;

// Shared driver for the pointwise inequality checks: lhs is f at the mix.
CheckReport pointwise_check(const std::string& name, const RawFunction& f, const ConvexSet& region, const CheckOptions& o,
                            const Comparison& compare)
{
    require_bounded(region, name.c_str());
    require_trials(o, name.c_str());
    if (region.dim() != f.dim) throw DimensionError(name + ": region and function dimensions differ");
    CheckReport r;
    r.name = name + " " + f.description;
    r.tolerance = o.tol;
    r.seed = o.seed;
    auto run = [&](const Vec& x, const Vec& y, double p) {
        const Vec z = mix(x, y, p);
        const double fx = floored(f.fn(x)), fy = floored(f.fn(y)), fz = floored(f.fn(z));
        const auto [lhs, rhs] = compare(fx, fy, fz, p);
        record(r, Witness{{x, y}, p, lhs, rhs, std::max(0.0, rhs - lhs), {}});
        ++r.trials;
    };
    for (const auto& t : o.probes) run(t.x, t.y, t.p);
    const CounterRng base(o.seed);
    for (std::size_t i = 0; i < o.trials; ++i) {
        CounterRng rng = base.split(i);
        const Vec x = sample_point(region, rng);
        const Vec y = sample_point(region, rng);
        run(x, y, rng.uniform());
    }
    finish(r);
    return r;
}

Vec uniform_in_bounds(const Bounds& b, CounterRng& rng)
{
    Vec x(b.lo.size());
    for (Eigen::Index i = 0; i < x.size(); ++i) x[i] = rng.uniform(b.lo[i], b.hi[i]);
    return x;
}

double typical_scale(const Bounds& b)
{
    if (b.lo.size() == 0) return 1.0;
    return std::max(1e-3, 0.25 * (b.hi - b.lo).maxCoeff());
}

// Error budget for mass(C) >= mass(A)^p mass(B)^(1-p) from the stated errors.
double inequality_budget(const Estimate& a, const Estimate& b, const Estimate& c, double p)
{
    const double rhs = geometric(a.value, b.value, p);
    const double hi = geometric(std::min(1.0, a.value + 3.0 * a.std_error), std::min(1.0, b.value + 3.0 * b.std_error), p);
    return 3.0 * c.std_error + std::max(0.0, hi - rhs);
}

bool same_point_mass(const State& a, const State& b, double* diff)
{
    Vec pa, pb;
    double wa = 0.0, wb = 0.0;
    if (!is_point_mass(a, &pa, &wa) || !is_point_mass(b, &pb, &wb)) {
        *diff = 1.0;
        return false;
    }
    *diff = std::abs(wa - wb);
    if (wa != 0.0 || wb != 0.0) {
        if (pa.size() != pb.size()) {
            *diff = 1.0;
            return false;
        }
        if (pa.size() > 0) *diff = std::max(*diff, (pa - pb).cwiseAbs().maxCoeff());
    }
    return *diff == 0.0;
}

}  // namespace

RawFunction raw(const Concept& c)
{
    return RawFunction{c.dim(), [c](const Vec& x) { return evaluate(c, x); }, describe(c)};
}

RawChannel raw(const Channel& f, const EvalOptions& options)
{
    return RawChannel{f.dom(), f.cod(), [f, options](const Vec& x) { return apply(f, x, options); }, describe(f)};
}

std::string to_string(Verdict v)
{
    switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::premise_unmet: return "premise-unmet";
    }
    return "unknown";
}

Json CheckReport::to_json() const
{
    Json w = Json::array();
    for (const auto& x : witnesses) {
        Json pts = Json::array();
        for (const auto& p : x.points) pts.push_back(logcon::to_json(p));
        w.push_back({{"points", pts}, {"p", x.p}, {"lhs", x.lhs}, {"rhs", x.rhs}, {"violation", x.violation}, {"note", x.note}});
    }
    Json v = Json::object();
    for (const auto& [k, val] : values) v[k] = val;
    return {{"name", name},
            {"trials", trials},
            {"worst_violation", worst_violation},
            {"tolerance", tolerance},
            {"verdict", to_string(verdict)},
            {"seed", seed},
            {"witnesses", w},
            {"notes", notes},
            {"values", v}};
}

std::string CheckReport::to_text() const
{
    std::ostringstream os;
    os << std::setprecision(6);
    os << '[' << to_string(verdict) << "] " << name << ": trials=" << trials << " worst=" << worst_violation
       << " tol=" << tolerance << " seed=" << seed;
    for (const auto& [k, v] : values) os << ' ' << k << '=' << v;
    for (const auto& n : notes) os << "\n  note: " << n;
    for (const auto& w : witnesses) {
        os << "\n  witness:";
        for (const auto& p : w.points) os << " (" << p.transpose() << ')';
        os << " p=" << w.p << " lhs=" << w.lhs << " rhs=" << w.rhs << " violation=" << w.violation;
        if (!w.note.empty()) os << ' ' << w.note;
    }
    return os.str();
}

// -- pointwise inequalities -------------------------------------------------

CheckReport check_log_concave(const RawFunction& f, const ConvexSet& region, const CheckOptions& o)
{
    return pointwise_check("log-concave", f, region, o, [](double fx, double fy, double fz, double p) {
        return std::pair{fz, floored(geometric(fx, fy, p))};
    });
}

CheckReport check_log_concave(const Concept& c, const ConvexSet& region, const CheckOptions& o)
{
    return check_log_concave(raw(c), region, o);
}

CheckReport check_quasi_concave(const RawFunction& f, const ConvexSet& region, const CheckOptions& o)
{
    return pointwise_check("quasi-concave", f, region, o,
                           [](double fx, double fy, double fz, double) { return std::pair{fz, std::min(fx, fy)}; });
}

CheckReport check_quasi_concave(const Concept& c, const ConvexSet& region, const CheckOptions& o)
{
    return check_quasi_concave(raw(c), region, o);
}

CheckReport check_t_cut_convexity(const RawFunction& f, const ConvexSet& region, const CheckOptions& o)
{
    // t is drawn per trial from a stream separate from the points.
    const CounterRng levels(o.seed, 0x7c07);
    std::size_t counter = 0;
    return pointwise_check("t-cut", f, region, o, [&](double fx, double fy, double fz, double) {
        CounterRng r = levels.split(counter++);
        const double t = r.uniform() * std::min(fx, fy);
        return std::pair{fz, t};
    });
}

RemarkValues counterexample_remark()
{
    const auto c = [](double x) { return 1.0 - x / 2.0; };
    const auto d = [](double y) { return (y * y + 1.0) / 2.0; };
    return {c(0.0) * d(0.0), c(1.0) * d(1.0), c(0.5) * d(0.5)};
}

RawFunction remark_c()
{
    return {1, [](const Vec& x) { return 1.0 - x[0] / 2.0; }, "C(x) = 1 - x/2"};
}

RawFunction remark_d()
{
    return {1, [](const Vec& y) { return (y[0] * y[0] + 1.0) / 2.0; }, "D(y) = (y^2 + 1)/2"};
}

RawFunction remark_tensor()
{
    return {2, [](const Vec& v) { return (1.0 - v[0] / 2.0) * ((v[1] * v[1] + 1.0) / 2.0); }, "(C (x) D)(x, y)"};
}

// -- measures and channels --------------------------------------------------

ConvexSet random_convex_set(int kind, const Vec& center, double scale, CounterRng& rng)
{
    const auto n = center.size();
    if (n == 0) return ConvexSet::point(Vec(0));
    switch (kind % 3) {
    case 0: return ConvexSet::ball(center, scale * rng.uniform(0.05, 1.0));
    case 1: {
        Vec half(n);
        for (Eigen::Index i = 0; i < n; ++i) half[i] = scale * rng.uniform(0.05, 1.0);
        return ConvexSet::box(center - half, center + half);
    }
    default: {
        Vec dir = rng.normal_vector(n);
        dir /= std::max(dir.norm(), 1e-12);
        const Vec half = dir * scale * rng.uniform(0.05, 1.0);
        return ConvexSet::hull({center - half, center + half});
    }
    }
}

CheckReport check_measure_log_concave(const State& s, const ConvexSet& region, const CheckOptions& o, const Integrator& integ)
{
    require_bounded(region, "measure log-concavity");
    if (region.dim() != s.dim()) throw DimensionError("measure log-concavity: region and state dimensions differ");
    CheckReport r;
    r.name = "measure log-concave " + describe(s);
    r.tolerance = o.tol;
    r.seed = o.seed;
    const Bounds bounds = bounding_box(region);
    const double scale = typical_scale(bounds);
    const CounterRng base(o.seed);
    double worst_excess = 0.0;
    const bool drawable = total_mass(s) > 0.0;
    for (std::size_t i = 0; i < o.trials; ++i) {
        CounterRng rng = base.split(i);
        const int kind = static_cast<int>(i % 3);
        const double p = rng.uniform();
        auto centre = [&](bool from_state) {
            if (from_state && drawable) return Vec(sample_one(s, rng) + 0.25 * scale * rng.normal_vector(s.dim()));
            return uniform_in_bounds(bounds, rng);
        };
        const Vec ca = centre(i % 2 == 0), cb = centre(i % 4 < 2);
        const ConvexSet a = random_convex_set(kind, ca, scale, rng);
        const ConvexSet b = random_convex_set(kind, cb, scale, rng);
        const ConvexSet c = minkowski_mix(a, b, p);
        Integrator local = integ;
        local.seed = mix64(integ.seed + i);
        const Estimate ma = mass(s, a, local), mb = mass(s, b, local), mc = mass(s, c, local);
        const double lhs = floored(mc.value), rhs = floored(geometric(ma.value, mb.value, p));
        const double budget = inequality_budget(ma, mb, mc, p);
        const double excess = std::max(0.0, rhs - lhs - budget);
        worst_excess = std::max(worst_excess, excess);
        r.worst_violation = std::max(r.worst_violation, std::max(0.0, rhs - lhs));
        if (excess > o.tol)
            r.witnesses.push_back(Witness{{ca, cb}, p, lhs, rhs, rhs - lhs, describe(a) + " | " + describe(b)});
        ++r.trials;
    }
    r.values["worst_excess_over_budget"] = worst_excess;
    r.notes.push_back("tolerance per trial is 3 stderr + " + short_number(o.tol));
    r.verdict = r.witnesses.empty() ? Verdict::pass : Verdict::fail;
    if (r.witnesses.size() > kMaxWitnesses) r.witnesses.resize(kMaxWitnesses);
    return r;
}

CheckReport check_channel_log_concave(const RawChannel& f, const ConvexSet& dom_region, const CheckOptions& o,
                                      const Integrator& integ)
{
    require_bounded(dom_region, "channel log-concavity");
    if (dom_region.dim() != f.dom.dim) throw DimensionError("channel log-concavity: region and domain dimensions differ");
    CheckReport r;
    r.name = "channel log-concave " + f.description;
    r.tolerance = o.tol;
    r.seed = o.seed;
    const double scale = typical_scale(bounding_box(dom_region));
    const CounterRng base(o.seed);
    double worst_excess = 0.0;
    const int m = f.cod.dim;
    for (std::size_t i = 0; i < o.trials; ++i) {
        CounterRng rng = base.split(i);
        const Vec x = sample_point(dom_region, rng);
        const Vec y = sample_point(dom_region, rng);
        const double p = rng.uniform();
        const Vec z = mix(x, y, p);
        const State fx = f.fn(x), fy = f.fn(y), fz = f.fn(z);
        auto centre = [&](const State& out) {
            Vec base_point = total_mass(out) > 0.0 ? sample_one(out, rng) : Vec(rng.normal_vector(m));
            return Vec(base_point + 0.25 * scale * rng.normal_vector(m));
        };
        const int kind = static_cast<int>(i % 3);
        const Vec ca = centre(fx), cb = centre(fy);
        const ConvexSet a = random_convex_set(kind, ca, scale, rng);
        const ConvexSet b = random_convex_set(kind, cb, scale, rng);
        const ConvexSet c = minkowski_mix(a, b, p);
        Integrator local = integ;
        local.seed = mix64(integ.seed + i);
        const Estimate ka = mass(fx, a, local), kb = mass(fy, b, local), kc = mass(fz, c, local);
        const double lhs = floored(kc.value), rhs = floored(geometric(ka.value, kb.value, p));
        const double excess = std::max(0.0, rhs - lhs - inequality_budget(ka, kb, kc, p));
        worst_excess = std::max(worst_excess, excess);
        r.worst_violation = std::max(r.worst_violation, std::max(0.0, rhs - lhs));
        if (excess > o.tol) r.witnesses.push_back(Witness{{x, y}, p, lhs, rhs, rhs - lhs, describe(a) + " | " + describe(b)});
        ++r.trials;
    }
    r.values["worst_excess_over_budget"] = worst_excess;
    r.notes.push_back("tolerance per trial is 3 stderr + " + short_number(o.tol));
    std::sort(r.witnesses.begin(), r.witnesses.end(), [](const Witness& a, const Witness& b) { return a.violation > b.violation; });
    if (r.witnesses.size() > kMaxWitnesses) r.witnesses.resize(kMaxWitnesses);
    r.verdict = r.witnesses.empty() ? Verdict::pass : Verdict::fail;
    return r;
}

CheckReport check_channel_log_concave(const Channel& f, const ConvexSet& dom_region, const CheckOptions& o, const EvalOptions& eval)
{
    return check_channel_log_concave(raw(f, eval), dom_region, o, eval.integrator);
}

RawChannel square_channel()
{
    const Space x = Space::of(ConvexSet::unit_cube(1));
    return RawChannel{x, Space::reals(1), [](const Vec& v) { return dirac(Vec::Constant(1, v[0] * v[0])); }, "x -> delta(x^2)"};
}

// -- Prekopa-Leindler -------------------------------------------------------

CheckReport check_prekopa_leindler(const RawFunction& g, const RawFunction& h, const ConvexSet& box, double p, double step)
{
    if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("prekopa-leindler: p must lie strictly between 0 and 1");
    if (!(step > 0.0)) throw std::invalid_argument("prekopa-leindler: step must be positive");
    const auto* b = box.as<ConvexSet::Box>();
    if (!b || !box.is_bounded()) throw std::invalid_argument("prekopa-leindler: support must be a bounded box");
    if (g.dim != box.dim() || h.dim != box.dim()) throw DimensionError("prekopa-leindler: dimension mismatch");
    const int n = box.dim();

    std::vector<std::size_t> counts(static_cast<std::size_t>(n));
    std::size_t total = 1;
    for (int a = 0; a < n; ++a) {
        counts[static_cast<std::size_t>(a)] = std::max<std::size_t>(1, static_cast<std::size_t>(std::llround((b->hi[a] - b->lo[a]) / step)));
        total *= counts[static_cast<std::size_t>(a)];
    }
    const double cell = std::pow(step, n);
    auto unflatten = [&](std::size_t idx, std::vector<std::size_t>& out) {
        for (int a = n - 1; a >= 0; --a) {
            out[static_cast<std::size_t>(a)] = idx % counts[static_cast<std::size_t>(a)];
            idx /= counts[static_cast<std::size_t>(a)];
        }
    };
    auto midpoint = [&](const std::vector<std::size_t>& idx) {
        Vec x(n);
        for (int a = 0; a < n; ++a) x[a] = b->lo[a] + step * (static_cast<double>(idx[static_cast<std::size_t>(a)]) + 0.5);
        return x;
    };

    const double ninf = -std::numeric_limits<double>::infinity();
    std::vector<double> gv(total), hv(total), lg(total), lh(total);
    std::vector<std::size_t> idx(static_cast<std::size_t>(n)), jdx(static_cast<std::size_t>(n));
    for (std::size_t i = 0; i < total; ++i) {
        unflatten(i, idx);
        const Vec x = midpoint(idx);
        gv[i] = floored(g.fn(x));
        hv[i] = floored(h.fn(x));
        lg[i] = gv[i] > 0.0 ? std::log(gv[i]) : ninf;
        lh[i] = hv[i] > 0.0 ? std::log(hv[i]) : ninf;
    }

    std::vector<double> lf(total, ninf);
    std::vector<std::size_t> gi, hj;
    for (std::size_t i = 0; i < total; ++i) {
        if (lg[i] != ninf) gi.push_back(i);
        if (lh[i] != ninf) hj.push_back(i);
    }
    if (n == 1) {
        for (std::size_t i : gi) {
            const double pi = p * static_cast<double>(i) + 0.5;
            const double base = p * lg[i];
            for (std::size_t j : hj) {
                const auto k = static_cast<std::size_t>(pi + (1.0 - p) * static_cast<double>(j));
                const double v = base + (1.0 - p) * lh[j];
                if (v > lf[k]) lf[k] = v;
            }
        }
    } else {
        for (std::size_t i : gi) {
            unflatten(i, idx);
            for (std::size_t j : hj) {
                unflatten(j, jdx);
                std::size_t k = 0;
                for (int a = 0; a < n; ++a) {
                    const auto s = static_cast<std::size_t>(a);
                    k = k * counts[s] +
                        static_cast<std::size_t>(p * static_cast<double>(idx[s]) + (1.0 - p) * static_cast<double>(jdx[s]) + 0.5);
                }
                const double v = p * lg[i] + (1.0 - p) * lh[j];
                if (v > lf[k]) lf[k] = v;
            }
        }
    }
    std::vector<double> fv(total);
    for (std::size_t k = 0; k < total; ++k) fv[k] = lf[k] == ninf ? 0.0 : std::exp(lf[k]);

    double sf = 0.0, sg = 0.0, sh = 0.0;
    for (std::size_t k = 0; k < total; ++k) {
        sf += fv[k];
        sg += gv[k];
        sh += hv[k];
    }
    // Total variation along every axis, summed over the three grid functions.
    double variation = 0.0;
    for (std::size_t k = 0; k < total; ++k) {
        unflatten(k, idx);
        std::size_t stride = 1;
        for (int a = n - 1; a >= 0; --a) {
            const auto s = static_cast<std::size_t>(a);
            if (idx[s] + 1 < counts[s]) {
                const std::size_t nb = k + stride;
                variation += std::abs(fv[nb] - fv[k]) + std::abs(gv[nb] - gv[k]) + std::abs(hv[nb] - hv[k]);
            }
            stride *= counts[s];
        }
    }
    const double lhs = cell * sf;
    const double int_g = cell * sg, int_h = cell * sh;
    const double rhs = geometric(int_g, int_h, p);
    const double allowance = cell * variation;

    CheckReport r;
    r.name = "prekopa-leindler g=" + g.description + " h=" + h.description;
    r.trials = gi.size() * hj.size();
    r.tolerance = allowance;
    r.worst_violation = std::max(0.0, rhs - lhs);
    r.values = {{"int_f", lhs}, {"int_g", int_g}, {"int_h", int_h}, {"rhs", rhs}, {"margin", lhs - rhs}, {"allowance", allowance},
                {"p", p}, {"step", step}};
    for (auto c : counts)
        if (c < 10) r.notes.push_back("coarse grid: fewer than 10 cells along an axis");
    if (rhs - lhs > allowance) r.witnesses.push_back(Witness{{}, p, lhs, rhs, rhs - lhs, "integral inequality"});
    r.verdict = r.witnesses.empty() ? Verdict::pass : Verdict::fail;
    return r;
}

CheckReport check_extended_pl(const State& mu, const State& nu, const State& omega, const RawFunction& f, const RawFunction& g,
                              const RawFunction& h, double p, const ConvexSet& region, const CheckOptions& o,
                              const Integrator& integ)
{
    if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("extended prekopa-leindler: p must lie strictly between 0 and 1");
    require_bounded(region, "extended prekopa-leindler");
    const int n = region.dim();
    if (mu.dim() != n || nu.dim() != n || omega.dim() != n || f.dim != n || g.dim != n || h.dim != n)
        throw DimensionError("extended prekopa-leindler: dimension mismatch");
    CheckReport r;
    r.name = "extended prekopa-leindler";
    r.seed = o.seed;
    r.tolerance = o.tol;
    const Bounds bounds = bounding_box(region);
    const double scale = typical_scale(bounds);
    const CounterRng base(o.seed);

    std::size_t measure_failures = 0, function_failures = 0;
    for (std::size_t i = 0; i < o.trials; ++i) {
        CounterRng rng = base.split(i);
        const int kind = static_cast<int>(i % 3);
        const ConvexSet a = random_convex_set(kind, uniform_in_bounds(bounds, rng), scale, rng);
        const ConvexSet b = random_convex_set(kind, uniform_in_bounds(bounds, rng), scale, rng);
        const ConvexSet c = minkowski_mix(a, b, p);
        Integrator local = integ;
        local.seed = mix64(integ.seed + i);
        const Estimate ma = mass(nu, a, local), mb = mass(omega, b, local), mc = mass(mu, c, local);
        if (geometric(ma.value, mb.value, p) - mc.value > inequality_budget(ma, mb, mc, p) + o.tol) ++measure_failures;

        const Vec x = sample_point(region, rng), y = sample_point(region, rng);
        if (geometric(floored(g.fn(x)), floored(h.fn(y)), p) - floored(f.fn(mix(x, y, p))) > o.tol) ++function_failures;
    }
    r.notes.push_back("premise probes: " + std::to_string(o.trials) + " set pairs and " + std::to_string(o.trials) + " point pairs");
    r.values["premise_measure_failures"] = static_cast<double>(measure_failures);
    r.values["premise_function_failures"] = static_cast<double>(function_failures);

    const Estimate lf = integrate(mu, f.fn, integ), lg = integrate(nu, g.fn, integ), lh = integrate(omega, h.fn, integ);
    const double lhs = lf.value, rhs = geometric(lg.value, lh.value, p);
    const double budget = inequality_budget(lg, lh, lf, p);
    r.values["lhs"] = lhs;
    r.values["rhs"] = rhs;
    r.values["budget"] = budget;
    r.trials = o.trials;
    r.worst_violation = std::max(0.0, rhs - lhs);
    r.tolerance = budget + o.tol;
    if (measure_failures > 0 || function_failures > 0) {
        r.verdict = Verdict::premise_unmet;
        return r;
    }
    if (rhs - lhs > r.tolerance) r.witnesses.push_back(Witness{{}, p, lhs, rhs, rhs - lhs, "integral inequality"});
    r.verdict = r.witnesses.empty() ? Verdict::pass : Verdict::fail;
    return r;
}

// -- Markov laws ------------------------------------------------------------

CheckReport check_markov_laws(int dim, std::size_t probes, std::uint64_t seed)
{
    if (dim < 1) throw std::invalid_argument("markov laws: dimension must be >= 1");
    CheckReport r;
    r.name = "markov laws in R^" + std::to_string(dim);
    r.seed = seed;
    r.tolerance = 0.0;
    const Space x = Space::reals(dim);
    const Channel id = identity(x);
    const Channel cp = copy(x);
    const Channel del = discard(x);

    struct Law {
        std::string name;
        Channel lhs;
        Channel rhs;
    };
    std::vector<Law> laws{
        {"counit left", compose(tensor(del, id), cp), id},
        {"counit right", compose(tensor(id, del), cp), id},
        {"coassociativity", compose(tensor(cp, id), cp), compose(tensor(id, cp), cp)},
        {"cocommutativity", compose(swap(x, x), cp), cp},
    };
    const CounterRng base(seed);
    CounterRng maps = base.split(0xa11);
    for (int k = 0; k < 3; ++k) {
        const int m = 1 + static_cast<int>(maps.next_u64() % 3);
        Mat a(m, dim), a2(m, dim);
        for (Eigen::Index i = 0; i < a.size(); ++i) {
            a.data()[i] = maps.normal();
            a2.data()[i] = maps.normal();
        }
        const Vec c = maps.normal_vector(m);
        const Vec c2 = maps.normal_vector(m);
        // partial maps are zero off their domain box
        std::optional<ConvexSet> domain;
        if (k == 2) domain = ConvexSet::box(Vec::Constant(dim, -1.0), Vec::Constant(dim, 1.0));
        const Channel f = crisp_affine(x, Space::reals(m), a, c, domain);
        const Space y = Space::reals(m);
        laws.push_back({"determinism " + std::to_string(k), compose(copy(y), f), compose(tensor(f, f), cp)});
        Mat s(m, m), s2(m, m);
        for (Eigen::Index i = 0; i < s.size(); ++i) {
            s.data()[i] = maps.normal();
            s2.data()[i] = maps.normal();
        }
        const Channel g1 = crisp_affine(y, y, s, c2);
        const Channel f2 = crisp_affine(x, y, a2, c);
        const Channel g2 = crisp_affine(y, y, s2, c2);
        laws.push_back({"interchange " + std::to_string(k), compose(tensor(g1, g2), tensor(f, f2)),
                        tensor(compose(g1, f), compose(g2, f2))});
    }

    for (std::size_t i = 0; i < probes; ++i) {
        CounterRng rng = base.split(i);
        const Vec point = 1.5 * rng.normal_vector(dim);
        for (const auto& law : laws) {
            const Vec probe = law.lhs.dom().dim == dim ? point : concat(point, point);
            double diff = 0.0;
            same_point_mass(apply(law.lhs, probe), apply(law.rhs, probe), &diff);
            record(r, Witness{{probe}, 0.0, 0.0, diff, diff, law.name});
            ++r.trials;
        }
    }
    finish(r);
    return r;
}

}  // namespace logcon
