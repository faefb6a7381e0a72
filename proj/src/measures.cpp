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


#include "logcon/measures.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <sstream>

#include "logcon/quadrature.hpp"

namespace logcon {

namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;

void require_dim(Eigen::Index got, Eigen::Index want, const char* what)
{
    if (got != want) {
        std::ostringstream os;
        os << what << ": dimension mismatch (" << got << " vs " << want << ")";
        throw DimensionError(os.str());
    }
}

Space default_space(int n) { return n == 0 ? Space::unit() : Space::reals(n); }

double normal_cdf(double z) { return 0.5 * std::erfc(-z / kSqrt2); }
double normal_sf(double z) { return 0.5 * std::erfc(z / kSqrt2); }

double cdf1d(const State::Density1D& d, double x)
{
    const double z = (x - d.location) / d.scale;
    if (d.kind == Density1DKind::laplace) return z < 0.0 ? 0.5 * std::exp(z) : 1.0 - 0.5 * std::exp(-z);
    return 1.0 / (1.0 + std::exp(-z));
}

double sf1d(const State::Density1D& d, double x)
{
    const double z = (x - d.location) / d.scale;
    if (d.kind == Density1DKind::laplace) return z < 0.0 ? 1.0 - 0.5 * std::exp(z) : 0.5 * std::exp(-z);
    return 1.0 / (1.0 + std::exp(z));
}

double pdf1d(const State::Density1D& d, double x)
{
    const double z = (x - d.location) / d.scale;
    if (d.kind == Density1DKind::laplace) return std::exp(-std::abs(z)) / (2.0 * d.scale);
    const double e = std::exp(-std::abs(z));
    return e / (d.scale * (1.0 + e) * (1.0 + e));
}

double quantile1d(const State::Density1D& d, double u)
{
    if (d.kind == Density1DKind::laplace)
        return u < 0.5 ? d.location + d.scale * std::log(2.0 * u) : d.location - d.scale * std::log(2.0 * (1.0 - u));
    return d.location + d.scale * std::log(u / (1.0 - u));
}

// Probability of [lo, hi] using the tail that keeps precision.
template <class Cdf, class Sf>
double interval_probability(double lo, double hi, double center, Cdf cdf, Sf sf)
{
    if (hi < lo) return 0.0;
    if (lo >= center) return std::max(0.0, sf(lo) - sf(hi));
    return std::max(0.0, cdf(hi) - cdf(lo));
}

Bounds interval_of(const ConvexSet& s) { return bounding_box(s); }

// Standard bivariate normal mass of a polygon through the boundary form
// (1 / 2 pi) sum over edges of cross(a, b) * int_0^1 (1 - exp(-|q|^2 / 2)) / |q|^2 dt.
double std_normal_polygon_mass(const std::vector<Vec>& z, int nodes)
{
    const QuadratureRule rule = gauss_legendre(nodes, 0.0, 1.0);
    double total = 0.0;
    for (std::size_t i = 0; i < z.size(); ++i) {
        const Vec& a = z[i];
        const Vec& b = z[(i + 1) % z.size()];
        const double c = a[0] * b[1] - a[1] * b[0];
        if (c == 0.0) continue;
        double edge = 0.0;
        for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
            const double r2 = (a + rule.nodes[k][0] * (b - a)).squaredNorm();
            edge += rule.weights[k] * (r2 < 1e-12 ? 0.5 - r2 / 8.0 : -std::expm1(-0.5 * r2) / r2);
        }
        total += c * edge;
    }
    return std::min(1.0, std::abs(total) / (2.0 * std::numbers::pi));
}

// Area of a disk intersected with an axis-aligned rectangle, integrated in the
// angle variable x = cx + r sin(theta) so every piece is analytic.
double disk_box_area(const Vec& c, double r, const Vec& lo, const Vec& hi)
{
    if (r <= 0.0) return 0.0;
    const double x0 = std::max(lo[0], c[0] - r);
    const double x1 = std::min(hi[0], c[0] + r);
    if (x1 <= x0) return 0.0;
    std::vector<double> breaks{x0, x1};
    for (double y : {lo[1], hi[1]}) {
        const double dy = y - c[1];
        if (std::abs(dy) < r) {
            const double w = std::sqrt(r * r - dy * dy);
            for (double x : {c[0] - w, c[0] + w})
                if (x > x0 && x < x1) breaks.push_back(x);
        }
    }
    std::sort(breaks.begin(), breaks.end());
    auto chord = [&](double theta) {
        const double h = r * std::cos(theta);
        const double top = std::min(hi[1], c[1] + h);
        const double bottom = std::max(lo[1], c[1] - h);
        return std::max(0.0, top - bottom) * h;  // includes dx = r cos(theta) dtheta / r
    };
    double area = 0.0;
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
        const double ta = std::asin(std::clamp((breaks[i] - c[0]) / r, -1.0, 1.0));
        const double tb = std::asin(std::clamp((breaks[i + 1] - c[0]) / r, -1.0, 1.0));
        if (tb <= ta) continue;
        const auto rule = gauss_legendre(32, ta, tb);
        for (std::size_t k = 0; k < rule.nodes.size(); ++k) area += rule.weights[k] * chord(rule.nodes[k][0]);
    }
    return area;
}

bool box_inside(const ConvexSet& inner, const ConvexSet::Box& outer)
{
    const auto b = bounding_box(inner);
    return (b.lo.array() >= outer.lo.array()).all() && (b.hi.array() <= outer.hi.array()).all();
}

struct MeasureRule {
    QuadratureRule rule;
    int effective_dim = 0;
};

std::optional<MeasureRule> measure_rule(const State& s, int n);

std::optional<MeasureRule> gaussian_rule(const State::Gaussian& g, int n)
{
    const auto k = g.factor.cols();
    if (k > 3) return std::nullopt;
    const auto base = box_rule(Vec::Constant(k, -8.0), Vec::Constant(k, 8.0), n);
    MeasureRule out;
    out.effective_dim = static_cast<int>(k);
    const double norm = std::pow(2.0 * std::numbers::pi, -0.5 * static_cast<double>(k));
    for (std::size_t i = 0; i < base.nodes.size(); ++i) {
        const Vec& z = base.nodes[i];
        out.rule.nodes.push_back(g.mean + g.factor * z);
        out.rule.weights.push_back(base.weights[i] * norm * std::exp(-0.5 * z.squaredNorm()));
    }
    return out;
}

std::optional<MeasureRule> measure_rule(const State& s, int n)
{
    return std::visit(
        [&](const auto& b) -> std::optional<MeasureRule> {
            using T = std::decay_t<decltype(b)>;
            if constexpr (std::is_same_v<T, State::Dirac>) {
                return MeasureRule{{{b.point}, {1.0}}, 0};
            } else if constexpr (std::is_same_v<T, State::Uniform>) {
                auto rule = region_rule(b.region, n);
                if (!rule) return std::nullopt;
                for (auto& w : rule->weights) w /= b.volume;
                return MeasureRule{std::move(*rule), b.region.dim()};
            } else if constexpr (std::is_same_v<T, State::Gaussian>) {
                return gaussian_rule(b, n);
            } else if constexpr (std::is_same_v<T, State::Density1D>) {
                MeasureRule out;
                out.effective_dim = 1;
                for (auto [lo, hi] : {std::pair{b.location - 40.0 * b.scale, b.location},
                                      std::pair{b.location, b.location + 40.0 * b.scale}}) {
                    const auto rule = gauss_legendre(n, lo, hi);
                    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
                        out.rule.nodes.push_back(rule.nodes[i]);
                        out.rule.weights.push_back(rule.weights[i] * pdf1d(b, rule.nodes[i][0]));
                    }
                }
                return out;
            } else if constexpr (std::is_same_v<T, State::Scaled>) {
                auto inner = measure_rule(*b.inner, n);
                if (!inner) return std::nullopt;
                for (auto& w : inner->rule.weights) w *= b.factor;
                return inner;
            } else if constexpr (std::is_same_v<T, State::SampleCloud>) {
                if (b.iid) return std::nullopt;
                return MeasureRule{{b.points, b.weights}, 0};
            } else if constexpr (std::is_same_v<T, State::Product>) {
                auto l = measure_rule(*b.left, n);
                if (!l) return std::nullopt;
                auto r = measure_rule(*b.right, n);
                if (!r || l->effective_dim + r->effective_dim > 3) return std::nullopt;
                return MeasureRule{tensor_rule(l->rule, r->rule), l->effective_dim + r->effective_dim};
            } else {
                auto rule = region_rule(b.support, n);
                if (!rule) return std::nullopt;
                for (std::size_t i = 0; i < rule->nodes.size(); ++i) rule->weights[i] *= b.rho(rule->nodes[i]);
                return MeasureRule{std::move(*rule), b.support.dim()};
            }
        },
        s.body());
}

double apply_rule(const QuadratureRule& rule, const std::function<double(const Vec&)>& f)
{
    double total = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i)
        if (rule.weights[i] != 0.0) total += rule.weights[i] * f(rule.nodes[i]);
    return total;
}

std::optional<Estimate> quadrature_estimate(const State& s, const std::function<double(const Vec&)>& f, int n)
{
    auto fine = measure_rule(s, n);
    if (!fine) return std::nullopt;
    const double value = apply_rule(fine->rule, f);
    if (fine->effective_dim == 0) return Estimate{value, 0.0, Strategy::closed_form};
    auto coarse = measure_rule(s, std::max(1, n / 2));
    const double rough = apply_rule(coarse->rule, f);
    return Estimate{value, std::abs(value - rough), Strategy::quadrature};
}

Estimate monte_carlo(const State& s, const std::function<double(const Vec&)>& f, const Integrator& integ)
{
    const double tm = total_mass(s);
    if (tm == 0.0) return {0.0, 0.0, Strategy::monte_carlo};
    const auto n = std::max<std::size_t>(integ.samples, 2);
    const auto points = sample(s, n, integ.seed);
    double sum = 0.0, sum_sq = 0.0;
    for (const auto& x : points) {
        const double v = f(x);
        sum += v;
        sum_sq += v * v;
    }
    const double mean = sum / static_cast<double>(n);
    const double var = std::max(0.0, (sum_sq - static_cast<double>(n) * mean * mean) / static_cast<double>(n - 1));
    return {tm * mean, tm * std::sqrt(var / static_cast<double>(n)), Strategy::monte_carlo};
}

Estimate scale_estimate(const Estimate& e, double factor, double factor_error)
{
    return {factor * e.value, factor * e.std_error + factor_error * std::abs(e.value), e.strategy};
}

Estimate product_estimate(const Estimate& a, const Estimate& b)
{
    Strategy s = a.strategy == Strategy::closed_form ? b.strategy : a.strategy;
    if (b.strategy == Strategy::monte_carlo) s = Strategy::monte_carlo;
    return {a.value * b.value, a.std_error * std::abs(b.value) + b.std_error * std::abs(a.value) + a.std_error * b.std_error, s};
}

Estimate cloud_sum(const State::SampleCloud& c, const std::function<double(const Vec&)>& f)
{
    const auto n = c.points.size();
    double sum = 0.0, sum_sq = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (c.weights[i] == 0.0) continue;
        const double v = c.weights[i] * f(c.points[i]);
        sum += v;
        sum_sq += v * v;
    }
    if (!c.iid || n < 2) return {sum, 0.0, Strategy::closed_form};
    // each draw contributes n * w_i f(p_i) to an unbiased average
    const double dn = static_cast<double>(n);
    const double mean = sum / dn;
    const double var = std::max(0.0, (sum_sq - dn * mean * mean) / (dn - 1.0));
    return {sum, std::sqrt(var * dn), Strategy::monte_carlo};
}

}  // namespace

std::string to_string(Strategy s)
{
    switch (s) {
    case Strategy::automatic: return "automatic";
    case Strategy::closed_form: return "closed-form";
    case Strategy::quadrature: return "quadrature";
    case Strategy::monte_carlo: return "monte-carlo";
    }
    return "unknown";
}

// -- construction -----------------------------------------------------------

std::string describe(const State& s)
{
    return std::visit(
        [&](const auto& b) -> std::string {
            using T = std::decay_t<decltype(b)>;
            std::ostringstream os;
            if constexpr (std::is_same_v<T, State::Dirac>) {
                os << "dirac(" << b.point.transpose() << ')';
            } else if constexpr (std::is_same_v<T, State::Uniform>) {
                os << "uniform(" << describe(b.region) << ')';
            } else if constexpr (std::is_same_v<T, State::Gaussian>) {
                os << "gauss(mean=[" << b.mean.transpose() << "], cov=[" << b.cov.reshaped().transpose() << "])";
            } else if constexpr (std::is_same_v<T, State::Density1D>) {
                os << (b.kind == Density1DKind::laplace ? "laplace(" : "logistic(") << b.location << ", " << b.scale << ')';
            } else if constexpr (std::is_same_v<T, State::Scaled>) {
                os << b.factor << " * " << describe(*b.inner);
            } else if constexpr (std::is_same_v<T, State::SampleCloud>) {
                os << "cloud(" << b.points.size() << " points, mass " << total_mass(s) << ')';
            } else if constexpr (std::is_same_v<T, State::Product>) {
                os << '(' << describe(*b.left) << " (x) " << describe(*b.right) << ')';
            } else {
                os << b.label << " on " << describe(b.support);
            }
            return os.str();
        },
        s.body());
}

State dirac(const Vec& x)
{
    if (!x.allFinite()) throw std::invalid_argument("dirac: non-finite point");
    return State(default_space(static_cast<int>(x.size())), State::Dirac{x});
}

State uniform(const ConvexSet& region)
{
    if (!region.is_bounded()) throw std::invalid_argument("uniform: region must be bounded");
    if (is_flat(region)) throw std::invalid_argument("uniform: region has zero volume");
    const double vol = volume(region).value_or(std::nan(""));
    return State(Space::of(region), State::Uniform{region, vol});
}

State gaussian(const Vec& mean, const Mat& cov)
{
    const auto n = mean.size();
    if (cov.rows() != n || cov.cols() != n) throw DimensionError("gaussian: covariance shape does not match the mean");
    if (!mean.allFinite() || !cov.allFinite()) throw std::invalid_argument("gaussian: non-finite parameter");
    if (n == 0) return dirac(Vec(0));
    const double scale = std::max(1.0, cov.cwiseAbs().maxCoeff());
    if ((cov - cov.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
        throw std::invalid_argument("gaussian: covariance is not symmetric");
    Eigen::SelfAdjointEigenSolver<Mat> eig(0.5 * (cov + cov.transpose()));
    const Vec& lambda = eig.eigenvalues();
    const double top = std::max(0.0, lambda.maxCoeff());
    if (n > 0 && lambda.minCoeff() < -1e-12 * std::max(1.0, top))
        throw std::invalid_argument("gaussian: covariance is not positive semi-definite");
    std::vector<Eigen::Index> keep;
    for (Eigen::Index i = 0; i < n; ++i)
        if (lambda[i] > 1e-14 * std::max(1.0, top)) keep.push_back(i);
    Mat factor(n, static_cast<Eigen::Index>(keep.size()));
    for (std::size_t j = 0; j < keep.size(); ++j)
        factor.col(static_cast<Eigen::Index>(j)) = eig.eigenvectors().col(keep[j]) * std::sqrt(lambda[keep[j]]);
    double log_norm = std::nan("");
    if (static_cast<Eigen::Index>(keep.size()) == n) {
        double logdet = 0.0;
        for (Eigen::Index i = 0; i < n; ++i) logdet += std::log(lambda[i]);
        log_norm = 0.5 * (static_cast<double>(n) * std::log(2.0 * std::numbers::pi) + logdet);
    }
    return State(default_space(static_cast<int>(n)), State::Gaussian{mean, cov, factor, log_norm});
}

State density1d(Density1DKind kind, double location, double scale)
{
    if (!std::isfinite(location) || !(scale > 0.0) || !std::isfinite(scale))
        throw std::invalid_argument("density1d: need finite location and positive scale");
    return State(Space::reals(1), State::Density1D{kind, location, scale});
}

State laplace(double location, double scale) { return density1d(Density1DKind::laplace, location, scale); }
State logistic(double location, double scale) { return density1d(Density1DKind::logistic, location, scale); }

State scaled(double factor, const State& inner, double factor_error)
{
    if (!(factor >= 0.0) || !std::isfinite(factor)) throw std::invalid_argument("scaled: factor must be finite and >= 0");
    if (factor > 1.0 && factor * total_mass(inner) > 1.0 + 1e-12) throw std::invalid_argument("scaled: total mass would exceed 1");
    if (factor == 1.0 && factor_error == 0.0) return inner;
    if (auto s = inner.as<State::Scaled>())
        return State(inner.space(), State::Scaled{factor * s->factor, factor * s->factor_error + factor_error * s->factor, s->inner});
    return State(inner.space(), State::Scaled{factor, factor_error, std::make_shared<const State>(inner)});
}

State zero_state(const Space& space) { return State(space, State::SampleCloud{}); }

State sample_cloud(const Space& space, std::vector<Vec> points, std::vector<double> weights, bool iid)
{
    if (points.size() != weights.size()) throw std::invalid_argument("sample_cloud: points and weights differ in length");
    double total = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i) {
        require_dim(points[i].size(), space.dim, "sample_cloud");
        if (!(weights[i] >= 0.0)) throw std::invalid_argument("sample_cloud: negative weight");
        total += weights[i];
    }
    if (total > 1.0 + 1e-12) throw std::invalid_argument("sample_cloud: weights sum above 1");
    return State(space, State::SampleCloud{std::move(points), std::move(weights), iid});
}

State product_state(const State& left, const State& right)
{
    if (left.space().is_unit()) return scaled(total_mass(left), right, 0.0);
    if (right.space().is_unit()) return scaled(total_mass(right), left, 0.0);
    if (is_zero(left) || is_zero(right)) return zero_state(product_space(left.space(), right.space()));
    if (auto s = left.as<State::Scaled>()) return scaled(s->factor, product_state(*s->inner, right), s->factor_error);
    if (auto s = right.as<State::Scaled>()) return scaled(s->factor, product_state(left, *s->inner), s->factor_error);
    const Space space = product_space(left.space(), right.space());
    auto dl = left.as<State::Dirac>();
    auto dr = right.as<State::Dirac>();
    if (dl && dr) return State(space, State::Dirac{concat(dl->point, dr->point)});
    auto gl = left.as<State::Gaussian>();
    auto gr = right.as<State::Gaussian>();
    if ((gl || dl) && (gr || dr)) {
        const auto a = left.dim(), b = right.dim();
        Mat cov = Mat::Zero(a + b, a + b);
        if (gl) cov.topLeftCorner(a, a) = gl->cov;
        if (gr) cov.bottomRightCorner(b, b) = gr->cov;
        return with_space(gaussian(concat(gl ? gl->mean : dl->point, gr ? gr->mean : dr->point), cov), space);
    }
    return State(space, State::Product{std::make_shared<const State>(left), std::make_shared<const State>(right)});
}

State density_state(std::function<double(const Vec&)> rho, const ConvexSet& support, std::string label)
{
    if (!support.is_bounded()) throw std::invalid_argument("density_state: support must be bounded");
    return State(Space::reals(support.dim()), State::Density{std::move(rho), support, std::move(label)});
}

State scalar_state(double value, double error)
{
    if (!(value >= 0.0 && value <= 1.0 + 1e-12)) throw std::invalid_argument("scalar_state: value must lie in [0,1]");
    return scaled(std::min(value, 1.0), dirac(Vec(0)), error);
}

State with_space(const State& s, const Space& space)
{
    require_dim(space.dim, s.dim(), "with_space");
    return State(space, s.body());
}

// -- queries ----------------------------------------------------------------

double total_mass(const State& s)
{
    return std::visit(
        [&](const auto& b) -> double {
            using T = std::decay_t<decltype(b)>;
            if constexpr (std::is_same_v<T, State::Scaled>) {
                return b.factor * total_mass(*b.inner);
            } else if constexpr (std::is_same_v<T, State::SampleCloud>) {
                double t = 0.0;
                for (double w : b.weights) t += w;
                return t;
            } else if constexpr (std::is_same_v<T, State::Product>) {
                return total_mass(*b.left) * total_mass(*b.right);
            } else if constexpr (std::is_same_v<T, State::Density>) {
                return total_mass_estimate(s).value;
            } else {
                return 1.0;
            }
        },
        s.body());
}

Estimate total_mass_estimate(const State& s, const Integrator& integ)
{
    if (auto b = s.as<State::Scaled>()) return scale_estimate(total_mass_estimate(*b->inner, integ), b->factor, b->factor_error);
    if (auto b = s.as<State::Product>())
        return product_estimate(total_mass_estimate(*b->left, integ), total_mass_estimate(*b->right, integ));
    if (auto b = s.as<State::SampleCloud>()) return cloud_sum(*b, [](const Vec&) { return 1.0; });
    if (auto b = s.as<State::Density>()) {
        if (auto q = quadrature_estimate(s, [](const Vec&) { return 1.0; }, integ.nodes)) return *q;
        // rejection-free fallback: uniform points over the bounding box
        const auto bounds = bounding_box(b->support);
        const double vol = (bounds.hi - bounds.lo).prod();
        CounterRng rng(integ.seed);
        double sum = 0.0, sum_sq = 0.0;
        const auto n = std::max<std::size_t>(integ.samples, 2);
        for (std::size_t i = 0; i < n; ++i) {
            CounterRng r = rng.split(i);
            Vec x(bounds.lo.size());
            for (Eigen::Index k = 0; k < x.size(); ++k) x[k] = r.uniform(bounds.lo[k], bounds.hi[k]);
            const double v = contains(b->support, x) ? vol * b->rho(x) : 0.0;
            sum += v;
            sum_sq += v * v;
        }
        const double dn = static_cast<double>(n);
        const double mean = sum / dn;
        return {mean, std::sqrt(std::max(0.0, (sum_sq / dn - mean * mean) / (dn - 1.0))), Strategy::monte_carlo};
    }
    return {1.0, 0.0, Strategy::closed_form};
}

bool is_zero(const State& s)
{
    if (auto c = s.as<State::SampleCloud>()) {
        for (double w : c->weights)
            if (w != 0.0) return false;
        return true;
    }
    if (auto c = s.as<State::Scaled>()) return c->factor == 0.0 || is_zero(*c->inner);
    if (auto c = s.as<State::Product>()) return is_zero(*c->left) || is_zero(*c->right);
    return false;
}

bool is_point_mass(const State& s, Vec* where, double* weight)
{
    double w = 1.0;
    const State* cur = &s;
    while (auto sc = cur->as<State::Scaled>()) {
        w *= sc->factor;
        cur = sc->inner.get();
    }
    Vec point;
    if (auto d = cur->as<State::Dirac>()) {
        point = d->point;
    } else if (auto g = cur->as<State::Gaussian>(); g && g->factor.cols() == 0) {
        point = g->mean;
    } else if (auto c = cur->as<State::SampleCloud>()) {
        double total = 0.0;
        for (std::size_t i = 0; i < c->points.size(); ++i) {
            if (c->weights[i] == 0.0) continue;
            if (total > 0.0 && c->points[i] != point) return false;
            point = c->points[i];
            total += c->weights[i];
        }
        w *= total;
        if (total == 0.0) point = Vec::Zero(s.dim());
    } else if (auto p = cur->as<State::Product>()) {
        Vec a, b;
        double wa = 0.0, wb = 0.0;
        if (!is_point_mass(*p->left, &a, &wa) || !is_point_mass(*p->right, &b, &wb)) return false;
        point = concat(a, b);
        w *= wa * wb;
    } else {
        return false;
    }
    if (where) *where = point;
    if (weight) *weight = w;
    return true;
}

Estimate mass(const State& s, const ConvexSet& region, const Integrator& integ)
{
    require_dim(region.dim(), s.dim(), "mass");
    const auto indicator = [&](const Vec& x) { return contains(region, x) ? 1.0 : 0.0; };
    const bool forced_mc = integ.strategy == Strategy::monte_carlo;

    if (auto b = s.as<State::Dirac>()) return {indicator(b->point), 0.0, Strategy::closed_form};
    if (auto b = s.as<State::Scaled>()) return scale_estimate(mass(*b->inner, region, integ), b->factor, b->factor_error);
    if (auto b = s.as<State::SampleCloud>()) return cloud_sum(*b, indicator);
    if (s.dim() == 0) return {total_mass(s), 0.0, Strategy::closed_form};

    if (auto b = s.as<State::Product>()) {
        if (auto pr = region.as<ConvexSet::Product>(); pr && pr->left->dim() == b->left->dim())
            return product_estimate(mass(*b->left, *pr->left, integ), mass(*b->right, *pr->right, integ));
        Vec point;
        double weight = 0.0;
        for (bool left_fixed : {true, false}) {
            const State& fixed = left_fixed ? *b->left : *b->right;
            const State& other = left_fixed ? *b->right : *b->left;
            if (!is_point_mass(fixed, &point, &weight)) continue;
            auto cut = slice(region, point, left_fixed);
            if (cut.kind == SliceKind::empty) return {0.0, 0.0, Strategy::closed_form};
            if (cut.kind == SliceKind::set) return scale_estimate(mass(other, *cut.set, integ), weight, 0.0);
        }
    }

    if (!forced_mc) {
        if (s.dim() == 1) {
            const auto iv = interval_of(region);
            const double lo = iv.lo[0], hi = iv.hi[0];
            if (auto b = s.as<State::Uniform>()) {
                const auto u = bounding_box(b->region);
                const double overlap = std::max(0.0, std::min(hi, u.hi[0]) - std::max(lo, u.lo[0]));
                return {overlap / (u.hi[0] - u.lo[0]), 0.0, Strategy::closed_form};
            }
            if (auto b = s.as<State::Gaussian>()) {
                if (b->factor.cols() == 0) return {indicator(b->mean), 0.0, Strategy::closed_form};
                const double sd = std::sqrt(b->cov(0, 0));
                const double mu = b->mean[0];
                return {interval_probability((lo - mu) / sd, (hi - mu) / sd, 0.0, normal_cdf, normal_sf), 0.0,
                        Strategy::closed_form};
            }
            if (auto b = s.as<State::Density1D>()) {
                auto cdf = [&](double x) { return cdf1d(*b, x); };
                auto sf = [&](double x) { return sf1d(*b, x); };
                return {interval_probability(lo, hi, b->location, cdf, sf), 0.0, Strategy::closed_form};
            }
        }
        if (auto b = s.as<State::Uniform>(); b && s.dim() == 2) {
            if (auto ub = b->region.as<ConvexSet::Box>())
                if (auto poly = polygon_of(region))
                    return {std::abs(polygon_area(clip_polygon(*poly, ub->lo, ub->hi))) / b->volume, 0.0, Strategy::closed_form};
        }
        if (auto b = s.as<State::Gaussian>()) {
            if (b->factor.cols() == 1)
                if (auto iv = line_interval(region, b->mean, b->factor.col(0)))
                    return {interval_probability(iv->first, iv->second, 0.0, normal_cdf, normal_sf), 0.0, Strategy::closed_form};
            if (s.dim() == 2 && b->factor.cols() == 2 && integ.strategy != Strategy::closed_form) {
                if (auto poly = polygon_of(region); poly && poly->size() >= 3) {
                    const auto lu = b->factor.partialPivLu();
                    std::vector<Vec> z;
                    for (const auto& v : *poly) z.push_back(lu.solve(v - b->mean));
                    const double fine = std_normal_polygon_mass(z, integ.nodes);
                    const double coarse = std_normal_polygon_mass(z, std::max(1, integ.nodes / 2));
                    return {fine, std::abs(fine - coarse), Strategy::quadrature};
                }
            }
        }
        if (auto b = s.as<State::Uniform>()) {
            if (is_flat(region)) return {0.0, 0.0, Strategy::closed_form};
            if (auto ub = b->region.as<ConvexSet::Box>()) {
                if (region.as<ConvexSet::Box>()) {
                    auto inter = intersect_boxes(b->region, region);
                    return {inter ? *volume(*inter) / b->volume : 0.0, 0.0, Strategy::closed_form};
                }
                if (auto ball = region.as<ConvexSet::Ball>(); ball && s.dim() == 2)
                    return {disk_box_area(ball->center, ball->radius, ub->lo, ub->hi) / b->volume, 0.0, Strategy::closed_form};
                if (box_inside(region, *ub))
                    if (auto v = volume(region)) return {*v / b->volume, 0.0, Strategy::closed_form};
            }
        }
        if (auto b = s.as<State::Gaussian>(); b && b->factor.cols() == s.dim()) {
            if (is_flat(region)) return {0.0, 0.0, Strategy::closed_form};
            const Vec sd = b->cov.diagonal().cwiseSqrt();
            if (auto box = region.as<ConvexSet::Box>()) {
                const Mat off = b->cov - Mat(b->cov.diagonal().asDiagonal());
                if (off.cwiseAbs().maxCoeff() == 0.0) {
                    double prob = 1.0;
                    for (Eigen::Index i = 0; i < s.dim(); ++i)
                        prob *= interval_probability((box->lo[i] - b->mean[i]) / sd[i], (box->hi[i] - b->mean[i]) / sd[i], 0.0,
                                                     normal_cdf, normal_sf);
                    return {prob, 0.0, Strategy::closed_form};
                }
            }
            if (s.dim() <= 3 && integ.strategy != Strategy::closed_form) {
                std::optional<ConvexSet> domain;
                if (auto box = region.as<ConvexSet::Box>()) {
                    const Vec lo = box->lo.cwiseMax(b->mean - 12.0 * sd);
                    const Vec hi = box->hi.cwiseMin(b->mean + 12.0 * sd);
                    if (((hi - lo).array() <= 0.0).any()) return {0.0, 0.0, Strategy::closed_form};
                    domain = ConvexSet::box(lo, hi);
                } else if (region.as<ConvexSet::Ball>()) {
                    domain = region;
                }
                if (domain) {
                    auto dens = [&](const Vec& x) { return *density(s, x); };
                    const auto fine = region_rule(*domain, integ.nodes);
                    const auto coarse = region_rule(*domain, std::max(1, integ.nodes / 2));
                    if (fine && coarse) {
                        const double v = apply_rule(*fine, dens);
                        return {std::min(1.0, v), std::abs(v - apply_rule(*coarse, dens)), Strategy::quadrature};
                    }
                }
            }
        }
        if (auto b = s.as<State::Density>(); b && region.as<ConvexSet::Box>() && b->support.as<ConvexSet::Box>()) {
            auto inter = intersect_boxes(b->support, region);
            if (!inter) return {0.0, 0.0, Strategy::closed_form};
            const auto fine = region_rule(*inter, integ.nodes);
            const auto coarse = region_rule(*inter, std::max(1, integ.nodes / 2));
            if (fine && coarse) {
                const double v = apply_rule(*fine, b->rho);
                return {v, std::abs(v - apply_rule(*coarse, b->rho)), Strategy::quadrature};
            }
        }
        if (integ.strategy == Strategy::closed_form || integ.strategy == Strategy::quadrature)
            throw IntegrationError("mass: no " + to_string(integ.strategy) + " rule for " + describe(s) + " over " + describe(region),
                                   integ.strategy, std::nan(""));
    }

    const double tm = total_mass(s);
    if (tm == 0.0) return {0.0, 0.0, Strategy::closed_form};
    const auto n = std::max<std::size_t>(integ.samples, 2);
    const auto points = sample(s, n, integ.seed);
    std::size_t hits = 0;
    for (const auto& x : points) hits += contains(region, x) ? 1 : 0;
    const double frac = static_cast<double>(hits) / static_cast<double>(n);
    return {tm * frac, tm * std::sqrt(frac * (1.0 - frac) / static_cast<double>(n)), Strategy::monte_carlo};
}

Estimate integrate(const State& s, const std::function<double(const Vec&)>& f, const Integrator& integ)
{
    if (auto b = s.as<State::Dirac>()) return {f(b->point), 0.0, Strategy::closed_form};
    if (auto b = s.as<State::Scaled>()) return scale_estimate(integrate(*b->inner, f, integ), b->factor, b->factor_error);
    if (auto b = s.as<State::SampleCloud>()) return cloud_sum(*b, f);
    if (auto b = s.as<State::Product>()) {
        Vec point;
        double weight = 0.0;
        if (is_point_mass(*b->left, &point, &weight))
            return scale_estimate(integrate(*b->right, [&](const Vec& y) { return f(concat(point, y)); }, integ), weight, 0.0);
        if (is_point_mass(*b->right, &point, &weight))
            return scale_estimate(integrate(*b->left, [&](const Vec& x) { return f(concat(x, point)); }, integ), weight, 0.0);
    }
    if (integ.strategy != Strategy::monte_carlo) {
        if (auto q = quadrature_estimate(s, f, integ.nodes)) return *q;
        if (integ.strategy == Strategy::closed_form || integ.strategy == Strategy::quadrature)
            throw IntegrationError("integrate: no " + to_string(integ.strategy) + " rule for " + describe(s), integ.strategy,
                                   std::nan(""));
    }
    return monte_carlo(s, f, integ);
}

Estimate pair(const State& s, const Concept& c, const Integrator& integ)
{
    require_dim(c.dim(), s.dim(), "pair");
    if (auto sc = c.as<Concept::Scalar>()) return scale_estimate(total_mass_estimate(s, integ), sc->value, 0.0);
    if (auto b = s.as<State::Scaled>()) return scale_estimate(pair(*b->inner, c, integ), b->factor, b->factor_error);
    if (auto t = c.as<Concept::Tensor>())
        if (auto p = s.as<State::Product>(); p && p->left->dim() == t->left->dim())
            return product_estimate(pair(*p->left, *t->left, integ), pair(*p->right, *t->right, integ));
    return integrate(s, [&](const Vec& x) { return evaluate(c, x); }, integ);
}

// -- sampling ---------------------------------------------------------------

Vec sample_one(const State& s, CounterRng& rng)
{
    return std::visit(
        [&](const auto& b) -> Vec {
            using T = std::decay_t<decltype(b)>;
            if constexpr (std::is_same_v<T, State::Dirac>) {
                return b.point;
            } else if constexpr (std::is_same_v<T, State::Uniform>) {
                return sample_uniform(b.region, rng);
            } else if constexpr (std::is_same_v<T, State::Gaussian>) {
                return b.mean + b.factor * rng.normal_vector(b.factor.cols());
            } else if constexpr (std::is_same_v<T, State::Density1D>) {
                return Vec::Constant(1, quantile1d(b, rng.uniform()));
            } else if constexpr (std::is_same_v<T, State::Scaled>) {
                return sample_one(*b.inner, rng);
            } else if constexpr (std::is_same_v<T, State::SampleCloud>) {
                double total = 0.0;
                for (double w : b.weights) total += w;
                if (total == 0.0) throw std::domain_error("sample: zero state");
                double u = rng.uniform() * total;
                for (std::size_t i = 0; i < b.points.size(); ++i) {
                    u -= b.weights[i];
                    if (u <= 0.0 && b.weights[i] > 0.0) return b.points[i];
                }
                for (std::size_t i = b.points.size(); i-- > 0;)
                    if (b.weights[i] > 0.0) return b.points[i];
                throw std::domain_error("sample: zero state");
            } else if constexpr (std::is_same_v<T, State::Product>) {
                CounterRng l = rng.split(1), r = rng.split(2);
                rng.next_u64();
                Vec a = sample_one(*b.left, l);
                return concat(a, sample_one(*b.right, r));
            } else {
                // rejection against an envelope estimated on a quadrature grid
                const auto bounds = bounding_box(b.support);
                const auto grid = box_rule(bounds.lo, bounds.hi, b.support.dim() <= 2 ? 24 : 6);
                double peak = 0.0;
                for (const auto& x : grid.nodes) peak = std::max(peak, b.rho(x));
                peak *= 1.5;
                if (peak <= 0.0) throw std::domain_error("sample: density vanishes on its support");
                for (int attempt = 0; attempt < 1000000; ++attempt) {
                    Vec x(bounds.lo.size());
                    for (Eigen::Index k = 0; k < x.size(); ++k) x[k] = rng.uniform(bounds.lo[k], bounds.hi[k]);
                    if (contains(b.support, x, 0.0) && rng.uniform() * peak <= b.rho(x)) return x;
                }
                throw NumericError("sample: rejection cap exceeded for " + b.label);
            }
        },
        s.body());
}

std::vector<Vec> sample(const State& s, std::size_t n, std::uint64_t seed)
{
    if (is_zero(s)) throw std::domain_error("sample: zero state has no normalization");
    const CounterRng base(seed);
    std::vector<Vec> out;
    out.reserve(n);
    if (auto c = s.as<State::SampleCloud>()) {
        std::vector<double> cumulative(c->weights.size());
        double total = 0.0;
        for (std::size_t i = 0; i < c->weights.size(); ++i) cumulative[i] = (total += c->weights[i]);
        for (std::size_t i = 0; i < n; ++i) {
            CounterRng r = base.split(i);
            const double u = r.uniform() * total;
            auto it = std::lower_bound(cumulative.begin(), cumulative.end(), u);
            auto idx = static_cast<std::size_t>(std::min<std::ptrdiff_t>(it - cumulative.begin(), static_cast<std::ptrdiff_t>(cumulative.size()) - 1));
            while (c->weights[idx] == 0.0 && idx > 0) --idx;
            out.push_back(c->points[idx]);
        }
        return out;
    }
    for (std::size_t i = 0; i < n; ++i) {
        CounterRng r = base.split(i);
        out.push_back(sample_one(s, r));
    }
    return out;
}

std::optional<double> density(const State& s, const Vec& x)
{
    require_dim(x.size(), s.dim(), "density");
    return std::visit(
        [&](const auto& b) -> std::optional<double> {
            using T = std::decay_t<decltype(b)>;
            if constexpr (std::is_same_v<T, State::Uniform>) {
                if (std::isnan(b.volume)) return std::nullopt;
                return contains(b.region, x, 0.0) ? 1.0 / b.volume : 0.0;
            } else if constexpr (std::is_same_v<T, State::Gaussian>) {
                if (std::isnan(b.log_norm)) return std::nullopt;
                const Vec d = x - b.mean;
                const double q = d.dot(b.cov.ldlt().solve(d));
                return std::exp(-0.5 * q - b.log_norm);
            } else if constexpr (std::is_same_v<T, State::Density1D>) {
                return pdf1d(b, x[0]);
            } else if constexpr (std::is_same_v<T, State::Scaled>) {
                auto inner = density(*b.inner, x);
                if (!inner) return std::nullopt;
                return b.factor * *inner;
            } else if constexpr (std::is_same_v<T, State::Product>) {
                const auto k = b.left->dim();
                auto l = density(*b.left, x.head(k));
                auto r = density(*b.right, x.tail(x.size() - k));
                if (!l || !r) return std::nullopt;
                return *l * *r;
            } else if constexpr (std::is_same_v<T, State::Density>) {
                return contains(b.support, x) ? b.rho(x) : 0.0;
            } else {
                return std::nullopt;
            }
        },
        s.body());
}

State translate(const State& s, const Vec& shift)
{
    require_dim(shift.size(), s.dim(), "translate");
    return std::visit(
        [&](const auto& b) -> State {
            using T = std::decay_t<decltype(b)>;
            if constexpr (std::is_same_v<T, State::Dirac>) {
                return State(s.space(), State::Dirac{b.point + shift});
            } else if constexpr (std::is_same_v<T, State::Uniform>) {
                return State(Space::of(translate(b.region, shift)), State::Uniform{translate(b.region, shift), b.volume});
            } else if constexpr (std::is_same_v<T, State::Gaussian>) {
                State::Gaussian g = b;
                g.mean += shift;
                return State(s.space(), std::move(g));
            } else if constexpr (std::is_same_v<T, State::Density1D>) {
                return State(s.space(), State::Density1D{b.kind, b.location + shift[0], b.scale});
            } else if constexpr (std::is_same_v<T, State::Scaled>) {
                return scaled(b.factor, translate(*b.inner, shift), b.factor_error);
            } else if constexpr (std::is_same_v<T, State::SampleCloud>) {
                auto pts = b.points;
                for (auto& p : pts) p += shift;
                return State(s.space(), State::SampleCloud{std::move(pts), b.weights, b.iid});
            } else if constexpr (std::is_same_v<T, State::Product>) {
                const auto k = b.left->dim();
                return product_state(translate(*b.left, shift.head(k)), translate(*b.right, shift.tail(shift.size() - k)));
            } else {
                auto rho = b.rho;
                return State(s.space(), State::Density{[rho, shift](const Vec& y) { return rho(y - shift); },
                                                       translate(b.support, shift), b.label});
            }
        },
        s.body());
}

std::optional<State> affine_image(const State& s, const Mat& m, const Vec& c)
{
    if (m.cols() != s.dim() || m.rows() != c.size()) throw DimensionError("affine_image: matrix shape mismatch");
    if (auto b = s.as<State::Dirac>()) return dirac(m * b->point + c);
    if (auto b = s.as<State::Gaussian>()) return gaussian(m * b->mean + c, m * b->cov * m.transpose());
    if (auto b = s.as<State::Scaled>()) {
        auto inner = affine_image(*b->inner, m, c);
        if (!inner) return std::nullopt;
        return scaled(b->factor, *inner, b->factor_error);
    }
    if (auto b = s.as<State::SampleCloud>()) {
        std::vector<Vec> pts;
        pts.reserve(b->points.size());
        for (const auto& p : b->points) pts.push_back(m * p + c);
        return sample_cloud(default_space(static_cast<int>(c.size())), std::move(pts), b->weights, b->iid);
    }
    if (auto b = s.as<State::Density1D>(); b && m.size() == 1 && m(0, 0) != 0.0)
        return density1d(b->kind, m(0, 0) * b->location + c[0], std::abs(m(0, 0)) * b->scale);
    return std::nullopt;
}

State to_cloud(const State& s, std::size_t n, std::uint64_t seed)
{
    if (s.as<State::SampleCloud>()) return s;
    Vec point;
    double weight = 0.0;
    if (is_point_mass(s, &point, &weight)) {
        if (weight == 0.0) return zero_state(s.space());
        return sample_cloud(s.space(), {point}, {weight});
    }
    const double tm = total_mass(s);
    auto points = sample(s, n, seed);
    std::vector<double> weights(points.size(), tm / static_cast<double>(n));
    return sample_cloud(s.space(), std::move(points), std::move(weights), true);
}

void write_cloud_csv(std::ostream& os, const State& cloud)
{
    const auto* c = cloud.as<State::SampleCloud>();
    if (!c) throw std::invalid_argument("write_cloud_csv: state is not a sample cloud");
    const auto old = os.precision(17);
    for (std::size_t i = 0; i < c->points.size(); ++i) {
        for (Eigen::Index k = 0; k < c->points[i].size(); ++k) os << c->points[i][k] << ',';
        os << c->weights[i] << '\n';
    }
    os.precision(old);
}

}  // namespace logcon
