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


#include "logcon/channels.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace logcon {

namespace {

void require_dim(Eigen::Index got, Eigen::Index want, const std::string& what)
{
    if (got != want) {
        std::ostringstream os;
        os << what << ": dimension mismatch (" << got << " vs " << want << ")";
        throw DimensionError(os.str());
    }
}

Space default_space(int n) { return n == 0 ? Space::unit() : Space::reals(n); }

template <class T>
std::shared_ptr<const T> share(const T& v)
{
    return std::make_shared<const T>(v);
}

EvalOptions child_options(const EvalOptions& o, std::uint64_t tag)
{
    EvalOptions c = o;
    c.seed = mix64(o.seed ^ mix64(tag + 0x9e3779b97f4a7c15ULL));
    c.integrator.seed = mix64(c.seed + 1);
    return c;
}

State unit_scalar(const Estimate& e)
{
    return scalar_state(std::clamp(e.value, 0.0, 1.0), e.std_error);
}

/// A state supported on a bounded region together with a density there.
struct DensityView {
    std::function<double(const Vec&)> rho;
    ConvexSet support;
};

std::optional<DensityView> density_view(const State& s)
{
    if (auto u = s.as<State::Uniform>()) {
        if (std::isnan(u->volume)) return std::nullopt;
        const double inv = 1.0 / u->volume;
        const ConvexSet region = u->region;
        return DensityView{[inv, region](const Vec& x) { return contains(region, x, 0.0) ? inv : 0.0; }, region};
    }
    if (auto d = s.as<State::Density>()) return DensityView{d->rho, d->support};
    return std::nullopt;
}

State update_state(const State& s, const std::function<double(const Vec&)>& g, const EvalOptions& o);

State reweight_cloud(const State& cloud, const std::function<double(const Vec&)>& g)
{
    const auto* c = cloud.as<State::SampleCloud>();
    std::vector<double> w = c->weights;
    for (std::size_t i = 0; i < w.size(); ++i)
        if (w[i] != 0.0) w[i] *= g(c->points[i]);
    return sample_cloud(cloud.space(), c->points, std::move(w), c->iid);
}

State update_state(const State& s, const std::function<double(const Vec&)>& g, const EvalOptions& o)
{
    Vec point;
    double weight = 0.0;
    if (is_point_mass(s, &point, &weight)) {
        if (weight == 0.0) return zero_state(s.space());
        return with_space(scaled(weight * g(point), dirac(point)), s.space());
    }
    if (auto b = s.as<State::Scaled>()) return scaled(b->factor, update_state(*b->inner, g, o), b->factor_error);
    if (s.as<State::SampleCloud>()) return reweight_cloud(s, g);
    if (auto b = s.as<State::Product>()) {
        const auto k = b->left->dim();
        if (is_point_mass(*b->right, &point, &weight)) {
            auto left = update_state(*b->left, [g, point](const Vec& x) { return g(concat(x, point)); }, o);
            return with_space(product_state(left, *b->right), s.space());
        }
        if (is_point_mass(*b->left, &point, &weight)) {
            auto right = update_state(*b->right, [g, point](const Vec& y) { return g(concat(point, y)); }, o);
            return with_space(product_state(*b->left, right), s.space());
        }
        auto l = density_view(*b->left);
        auto r = density_view(*b->right);
        if (l && r) {
            auto rho = [l = *l, r = *r, g, k](const Vec& x) {
                const double a = l.rho(x.head(k));
                if (a == 0.0) return 0.0;
                const double v = a * r.rho(x.tail(x.size() - k));
                return v == 0.0 ? 0.0 : v * g(x);
            };
            return with_space(density_state(rho, ConvexSet::product(l->support, r->support), "update"), s.space());
        }
    }
    if (auto view = density_view(s)) {
        auto rho = [view = *view, g](const Vec& x) {
            const double d = view.rho(x);
            return d == 0.0 ? 0.0 : d * g(x);
        };
        return with_space(density_state(rho, view->support, "update"), s.space());
    }
    return reweight_cloud(to_cloud(s, o.mc_samples, o.seed), g);
}

Mat swap_matrix(int a, int b)
{
    Mat m = Mat::Zero(a + b, a + b);
    m.topRightCorner(b, b).setIdentity();
    m.bottomLeftCorner(a, a).setIdentity();
    return m;
}

State monte_carlo_push(const Channel& f, const State& omega, const EvalOptions& o)
{
    const State cloud = to_cloud(omega, o.mc_samples, o.seed);
    const auto* c = cloud.as<State::SampleCloud>();
    const std::size_t npts = c->points.size();
    if (npts == 0) return zero_state(f.cod());
    const std::size_t draws = std::max<std::size_t>(1, o.mc_samples / npts);
    bool iid = c->iid;
    std::vector<Vec> points;
    std::vector<double> weights;
    const CounterRng base(o.seed, 0xc0de);
    for (std::size_t i = 0; i < npts; ++i) {
        if (c->weights[i] == 0.0) continue;
        const State out = apply(f, c->points[i], child_options(o, i));
        Vec y;
        double w = 0.0;
        if (is_point_mass(out, &y, &w)) {
            if (w > 0.0) {
                points.push_back(y);
                weights.push_back(c->weights[i] * w);
            }
            continue;
        }
        const double m = total_mass(out);
        if (m == 0.0) continue;
        iid = true;
        CounterRng rng = base.split(i);
        for (std::size_t k = 0; k < draws; ++k) {
            points.push_back(sample_one(out, rng));
            weights.push_back(c->weights[i] * m / static_cast<double>(draws));
        }
    }
    double total = 0.0;
    for (double w : weights) total += w;
    if (total > 1.0) {
        for (double& w : weights) w /= total;
    }
    return sample_cloud(f.cod(), std::move(points), std::move(weights), iid);
}

bool has_whole_domain(const ConvexSet& d) { return d.is_whole_space(); }

}  // namespace

// -- construction -----------------------------------------------------------

std::string describe(const Channel& f)
{
    return std::visit(
        [&](const auto& b) -> std::string {
            using T = std::decay_t<decltype(b)>;
            std::ostringstream os;
            if constexpr (std::is_same_v<T, Channel::CrispAffine>) {
                os << "affine(" << b.m.rows() << "x" << b.m.cols() << ")";
            } else if constexpr (std::is_same_v<T, Channel::NoisyAffine>) {
                os << "noisy(" << b.m.rows() << "x" << b.m.cols() << ", " << describe(*b.noise) << ')';
            } else if constexpr (std::is_same_v<T, Channel::DensityKernel>) {
                os << "density(" << b.label << ')';
            } else if constexpr (std::is_same_v<T, Channel::Update>) {
                os << "update(" << describe(*b.predicate) << ')';
            } else if constexpr (std::is_same_v<T, Channel::Copy>) {
                os << "copy(" << describe(f.dom()) << ')';
            } else if constexpr (std::is_same_v<T, Channel::Discard>) {
                os << "discard(" << describe(f.dom()) << ')';
            } else if constexpr (std::is_same_v<T, Channel::Identity>) {
                os << "id(" << describe(f.dom()) << ')';
            } else if constexpr (std::is_same_v<T, Channel::Swap>) {
                os << "swap(" << b.left_dim << ", " << f.dom().dim - b.left_dim << ')';
            } else if constexpr (std::is_same_v<T, Channel::Compose>) {
                os << '(' << describe(*b.first) << " ; " << describe(*b.second) << ')';
            } else if constexpr (std::is_same_v<T, Channel::Tensor>) {
                os << '(' << describe(*b.left) << " * " << describe(*b.right) << ')';
            } else if constexpr (std::is_same_v<T, Channel::StatePrep>) {
                os << "state(" << describe(*b.state) << ')';
            } else {
                os << "effect(" << describe(*b.predicate) << ')';
            }
            return os.str();
        },
        f.body());
}

Channel identity(const Space& x) { return Channel(x, x, Channel::Identity{}); }

Channel copy(const Space& x) { return Channel(x, product_space(x, x), Channel::Copy{}); }

Channel discard(const Space& x) { return Channel(x, Space::unit(), Channel::Discard{}); }

Channel swap(const Space& x, const Space& y)
{
    return Channel(product_space(x, y), product_space(y, x), Channel::Swap{x.dim});
}

Channel crisp_affine(const Space& dom, const Space& cod, const Mat& m, const Vec& c, std::optional<ConvexSet> domain)
{
    if (m.rows() != cod.dim || m.cols() != dom.dim || c.size() != cod.dim)
        throw DimensionError("affine map: matrix is " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()) +
                             " but the spaces have dimensions " + std::to_string(dom.dim) + " -> " + std::to_string(cod.dim));
    if (!m.allFinite() || !c.allFinite()) throw std::invalid_argument("affine map: non-finite entry");
    ConvexSet d = domain.value_or(dom.carrier);
    require_dim(d.dim(), dom.dim, "affine map domain");
    return Channel(dom, cod, Channel::CrispAffine{m, c, std::move(d)});
}

Channel crisp_affine(const Mat& m, const Vec& c, std::optional<ConvexSet> domain)
{
    return crisp_affine(default_space(static_cast<int>(m.cols())), default_space(static_cast<int>(m.rows())), m, c,
                        std::move(domain));
}

Channel noisy_affine(const Mat& m, const Vec& c, const State& noise, std::optional<ConvexSet> domain)
{
    if (m.rows() != noise.dim() || c.size() != noise.dim()) throw DimensionError("noisy: matrix rows, offset and noise must agree");
    if (!m.allFinite() || !c.allFinite()) throw std::invalid_argument("noisy: non-finite entry");
    const Space dom = default_space(static_cast<int>(m.cols()));
    ConvexSet d = domain.value_or(dom.carrier);
    require_dim(d.dim(), dom.dim, "noisy domain");
    return Channel(dom, default_space(noise.dim()), Channel::NoisyAffine{m, c, std::move(d), share(noise)});
}

Channel density_channel(const Space& dom, std::function<double(const Vec&, const Vec&)> rho, const ConvexSet& support,
                        std::string label, const std::vector<Vec>& probes)
{
    if (!support.is_bounded()) throw std::invalid_argument("density channel: support must be bounded");
    std::vector<Vec> xs = probes;
    if (xs.empty()) {
        CounterRng rng(0xde5);
        for (int i = 0; i < 8; ++i)
            xs.push_back(dom.carrier.is_bounded() ? sample_point(dom.carrier, rng) : rng.normal_vector(dom.dim));
    }
    for (const auto& x : xs) {
        require_dim(x.size(), dom.dim, "density channel probe");
        const auto m = total_mass_estimate(density_state([&](const Vec& y) { return rho(x, y); }, support));
        if (m.value > 1.0 + 1e-6 + m.std_error) {
            std::ostringstream os;
            os << "density channel: kernel integrates to " << m.value << " > 1 at x = " << x.transpose();
            throw std::invalid_argument(os.str());
        }
    }
    return Channel(dom, Space::of(support), Channel::DensityKernel{std::move(rho), support, std::move(label)});
}

Channel update(const Concept& c) { return Channel(c.space(), c.space(), Channel::Update{share(c)}); }

Channel effect(const Concept& c) { return Channel(c.space(), Space::unit(), Channel::Effect{share(c)}); }

Channel state_prep(const State& s) { return Channel(Space::unit(), s.space(), Channel::StatePrep{share(s)}); }

Channel compose(const Channel& g, const Channel& f)
{
    if (f.cod().dim != g.dom().dim) {
        std::ostringstream os;
        os << "compose: " << describe(f) << " has codomain of dimension " << f.cod().dim << " but " << describe(g)
           << " expects dimension " << g.dom().dim;
        throw DimensionError(os.str());
    }
    return Channel(f.dom(), g.cod(), Channel::Compose{share(g), share(f)});
}

Channel then(const Channel& f, const Channel& g) { return compose(g, f); }

Channel tensor(const Channel& f, const Channel& g)
{
    return Channel(product_space(f.dom(), g.dom()), product_space(f.cod(), g.cod()), Channel::Tensor{share(f), share(g)});
}

Channel convolve(const Channel& f, const Channel& g)
{
    if (f.dom().dim != g.dom().dim || f.cod().dim != g.cod().dim)
        throw DimensionError("convolve: channels must share domain and codomain dimensions");
    if (!f.cod().carrier.is_whole_space() || !g.cod().carrier.is_whole_space())
        throw std::invalid_argument("convolve: codomain carrier must be all of R^m to be closed under addition");
    const auto m = f.cod().dim;
    Mat add(m, 2 * m);
    add << Mat::Identity(m, m), Mat::Identity(m, m);
    const Space sum_dom = product_space(f.cod(), g.cod());
    const Channel plus = crisp_affine(sum_dom, f.cod(), add, Vec::Zero(m));
    return compose(plus, compose(tensor(f, g), copy(f.dom())));
}

// -- simplification ---------------------------------------------------------

std::optional<GaussAffine> gauss_affine(const Channel& f)
{
    const int n = f.dom().dim;
    return std::visit(
        [&](const auto& b) -> std::optional<GaussAffine> {
            using T = std::decay_t<decltype(b)>;
            if constexpr (std::is_same_v<T, Channel::Identity>) {
                return GaussAffine{Mat::Identity(n, n), Vec::Zero(n), Mat::Zero(n, n)};
            } else if constexpr (std::is_same_v<T, Channel::Copy>) {
                Mat m(2 * n, n);
                m << Mat::Identity(n, n), Mat::Identity(n, n);
                return GaussAffine{m, Vec::Zero(2 * n), Mat::Zero(2 * n, 2 * n)};
            } else if constexpr (std::is_same_v<T, Channel::Discard>) {
                return GaussAffine{Mat(0, n), Vec(0), Mat(0, 0)};
            } else if constexpr (std::is_same_v<T, Channel::Swap>) {
                return GaussAffine{swap_matrix(b.left_dim, n - b.left_dim), Vec::Zero(n), Mat::Zero(n, n)};
            } else if constexpr (std::is_same_v<T, Channel::CrispAffine>) {
                if (!has_whole_domain(b.domain)) return std::nullopt;
                const auto k = b.m.rows();
                return GaussAffine{b.m, b.c, Mat::Zero(k, k)};
            } else if constexpr (std::is_same_v<T, Channel::NoisyAffine>) {
                if (!has_whole_domain(b.domain)) return std::nullopt;
                if (auto g = b.noise->template as<State::Gaussian>()) return GaussAffine{b.m, b.c + g->mean, g->cov};
                if (auto d = b.noise->template as<State::Dirac>()) {
                    const auto k = b.m.rows();
                    return GaussAffine{b.m, b.c + d->point, Mat::Zero(k, k)};
                }
                return std::nullopt;
            } else if constexpr (std::is_same_v<T, Channel::Compose>) {
                auto first = gauss_affine(*b.first);
                if (!first) return std::nullopt;
                auto second = gauss_affine(*b.second);
                if (!second) return std::nullopt;
                return GaussAffine{second->m * first->m, second->m * first->c + second->c,
                                   second->m * first->sigma * second->m.transpose() + second->sigma};
            } else if constexpr (std::is_same_v<T, Channel::Tensor>) {
                auto l = gauss_affine(*b.left);
                if (!l) return std::nullopt;
                auto r = gauss_affine(*b.right);
                if (!r) return std::nullopt;
                const auto lr = l->m.rows(), lc = l->m.cols(), rr = r->m.rows(), rc = r->m.cols();
                GaussAffine out{Mat::Zero(lr + rr, lc + rc), Vec(lr + rr), Mat::Zero(lr + rr, lr + rr)};
                out.m.topLeftCorner(lr, lc) = l->m;
                out.m.bottomRightCorner(rr, rc) = r->m;
                out.c << l->c, r->c;
                out.sigma.topLeftCorner(lr, lr) = l->sigma;
                out.sigma.bottomRightCorner(rr, rr) = r->sigma;
                return out;
            } else {
                return std::nullopt;
            }
        },
        f.body());
}

Channel simplify(const Channel& f)
{
    if (auto b = f.as<Channel::Compose>()) {
        const Channel first = simplify(*b->first);
        const Channel second = simplify(*b->second);
        if (second.as<Channel::Identity>()) return Channel(f.dom(), f.cod(), first.body());
        if (first.as<Channel::Identity>()) return Channel(f.dom(), f.cod(), second.body());
        auto a1 = first.as<Channel::CrispAffine>();
        auto a2 = second.as<Channel::CrispAffine>();
        if (a1 && a2 && has_whole_domain(a1->domain) && has_whole_domain(a2->domain))
            return crisp_affine(f.dom(), f.cod(), a2->m * a1->m, a2->m * a1->c + a2->c, f.dom().carrier);
        auto n1 = first.as<Channel::NoisyAffine>();
        auto n2 = second.as<Channel::NoisyAffine>();
        if (n1 && n2 && has_whole_domain(n1->domain) && has_whole_domain(n2->domain)) {
            auto g1 = n1->noise->as<State::Gaussian>();
            auto g2 = n2->noise->as<State::Gaussian>();
            if (g1 && g2) {
                const State noise = gaussian(n2->m * g1->mean + g2->mean, n2->m * g1->cov * n2->m.transpose() + g2->cov);
                return Channel(f.dom(), f.cod(),
                               Channel::NoisyAffine{n2->m * n1->m, n2->m * n1->c + n2->c, f.dom().carrier, share(noise)});
            }
        }
        return Channel(f.dom(), f.cod(), Channel::Compose{share(second), share(first)});
    }
    if (auto b = f.as<Channel::Tensor>()) {
        const Channel l = simplify(*b->left);
        const Channel r = simplify(*b->right);
        if (l.as<Channel::Identity>() && r.as<Channel::Identity>()) return identity(f.dom());
        if (l.dom().is_unit() && l.cod().is_unit() && l.as<Channel::Identity>()) return Channel(f.dom(), f.cod(), r.body());
        if (r.dom().is_unit() && r.cod().is_unit() && r.as<Channel::Identity>()) return Channel(f.dom(), f.cod(), l.body());
        return Channel(f.dom(), f.cod(), Channel::Tensor{share(l), share(r)});
    }
    if (auto b = f.as<Channel::Update>()) {
        if (auto s = b->predicate->as<Concept::Scalar>(); s && s->value == 1.0) return identity(f.dom());
    }
    return f;
}

// -- evaluation -------------------------------------------------------------

State apply(const Channel& f, const Vec& x, const EvalOptions& o)
{
    require_dim(x.size(), f.dom().dim, "apply " + describe(f));
    return std::visit(
        [&](const auto& b) -> State {
            using T = std::decay_t<decltype(b)>;
            if constexpr (std::is_same_v<T, Channel::CrispAffine>) {
                if (!contains(b.domain, x)) return zero_state(f.cod());
                return with_space(dirac(b.m * x + b.c), f.cod());
            } else if constexpr (std::is_same_v<T, Channel::NoisyAffine>) {
                if (!contains(b.domain, x)) return zero_state(f.cod());
                return with_space(translate(*b.noise, b.m * x + b.c), f.cod());
            } else if constexpr (std::is_same_v<T, Channel::DensityKernel>) {
                auto rho = b.rho;
                return with_space(density_state([rho, x](const Vec& y) { return rho(x, y); }, b.support, b.label), f.cod());
            } else if constexpr (std::is_same_v<T, Channel::Update>) {
                return with_space(scaled(evaluate(*b.predicate, x), dirac(x)), f.cod());
            } else if constexpr (std::is_same_v<T, Channel::Copy>) {
                return with_space(dirac(concat(x, x)), f.cod());
            } else if constexpr (std::is_same_v<T, Channel::Discard>) {
                return dirac(Vec(0));
            } else if constexpr (std::is_same_v<T, Channel::Identity>) {
                return with_space(dirac(x), f.cod());
            } else if constexpr (std::is_same_v<T, Channel::Swap>) {
                return with_space(dirac(concat(x.tail(x.size() - b.left_dim), x.head(b.left_dim))), f.cod());
            } else if constexpr (std::is_same_v<T, Channel::Compose>) {
                const State mid = apply(*b.first, x, o);
                return push(*b.second, mid, child_options(o, 1));
            } else if constexpr (std::is_same_v<T, Channel::Tensor>) {
                const auto k = b.left->dom().dim;
                const State l = apply(*b.left, x.head(k), child_options(o, 2));
                const State r = apply(*b.right, x.tail(x.size() - k), child_options(o, 3));
                return with_space(product_state(l, r), f.cod());
            } else if constexpr (std::is_same_v<T, Channel::StatePrep>) {
                return *b.state;
            } else {
                return scalar_state(std::clamp(evaluate(*b.predicate, x), 0.0, 1.0));
            }
        },
        f.body());
}

Estimate kernel(const Channel& f, const Vec& x, const ConvexSet& a, const EvalOptions& o)
{
    return mass(apply(f, x, o), a, o.integrator);
}

State push(const Channel& f, const State& omega, const EvalOptions& o)
{
    require_dim(omega.dim(), f.dom().dim, "push " + describe(f));
    if (f.as<Channel::Identity>()) return with_space(omega, f.cod());
    Vec point;
    double weight = 0.0;
    if (is_point_mass(omega, &point, &weight)) {
        if (weight == 0.0) return zero_state(f.cod());
        const State out = apply(f, point, o);
        return weight == 1.0 ? out : scaled(weight, out);
    }
    if (auto b = omega.as<State::Scaled>()) return scaled(b->factor, push(f, *b->inner, o), b->factor_error);
    if (is_zero(omega)) return zero_state(f.cod());

    if (auto g = gauss_affine(f)) {
        if (auto s = omega.as<State::Gaussian>())
            return with_space(gaussian(g->m * s->mean + g->c, g->m * s->cov * g->m.transpose() + g->sigma), f.cod());
        if (g->sigma.size() == 0 || g->sigma.cwiseAbs().maxCoeff() == 0.0)
            if (auto img = affine_image(omega, g->m, g->c)) return with_space(*img, f.cod());
    }

    return std::visit(
        [&](const auto& b) -> State {
            using T = std::decay_t<decltype(b)>;
            if constexpr (std::is_same_v<T, Channel::Compose>) {
                return push(*b.second, push(*b.first, omega, child_options(o, 1)), child_options(o, 4));
            } else if constexpr (std::is_same_v<T, Channel::Tensor>) {
                if (auto p = omega.as<State::Product>(); p && p->left->dim() == b.left->dom().dim)
                    return with_space(product_state(push(*b.left, *p->left, child_options(o, 2)),
                                                    push(*b.right, *p->right, child_options(o, 3))),
                                      f.cod());
                return monte_carlo_push(f, omega, o);
            } else if constexpr (std::is_same_v<T, Channel::Discard>) {
                return unit_scalar(total_mass_estimate(omega, o.integrator));
            } else if constexpr (std::is_same_v<T, Channel::Effect>) {
                return unit_scalar(pair(omega, *b.predicate, o.integrator));
            } else if constexpr (std::is_same_v<T, Channel::StatePrep>) {
                return scaled(std::min(1.0, total_mass(omega)), *b.state);
            } else if constexpr (std::is_same_v<T, Channel::Update>) {
                const auto c = b.predicate;
                return update_state(omega, [c](const Vec& x) { return evaluate(*c, x); }, o);
            } else {
                return monte_carlo_push(f, omega, o);
            }
        },
        f.body());
}

State pushforward(const Channel& f, const State& omega, const EvalOptions& o)
{
    return apply(compose(f, state_prep(omega)), Vec(0), o);
}

PulledEffect::PulledEffect(Channel f, Concept c, EvalOptions options)
    : f_(std::move(f)), c_(std::move(c)), options_(options)
{
    if (f_.cod().dim != c_.dim())
        throw DimensionError("pullback: concept has dimension " + std::to_string(c_.dim()) + " but the channel lands in dimension " +
                             std::to_string(f_.cod().dim));
}

Estimate PulledEffect::operator()(const Vec& x) const
{
    return pair(apply(f_, x, options_), c_, options_.integrator);
}

PulledEffect pullback_effect(const Channel& f, const Concept& c, const EvalOptions& options)
{
    return PulledEffect(f, c, options);
}

static bool structurally_crisp(const Channel& f)
{
    return std::visit(
        [&](const auto& b) -> bool {
            using T = std::decay_t<decltype(b)>;
            if constexpr (std::is_same_v<T, Channel::CrispAffine> || std::is_same_v<T, Channel::Copy> ||
                          std::is_same_v<T, Channel::Discard> || std::is_same_v<T, Channel::Identity> ||
                          std::is_same_v<T, Channel::Swap>) {
                return true;
            } else if constexpr (std::is_same_v<T, Channel::Compose>) {
                return structurally_crisp(*b.first) && structurally_crisp(*b.second);
            } else if constexpr (std::is_same_v<T, Channel::Tensor>) {
                return structurally_crisp(*b.left) && structurally_crisp(*b.right);
            } else {
                return false;
            }
        },
        f.body());
}

bool is_crisp(const Channel& f, const std::vector<Vec>& probes, const EvalOptions& o)
{
    const bool structural = structurally_crisp(f);
    if (structural) return true;
    std::vector<Vec> xs = probes;
    if (xs.empty()) {
        CounterRng rng(o.seed);
        for (int i = 0; i < 32; ++i)
            xs.push_back(f.dom().carrier.is_bounded() ? sample_point(f.dom().carrier, rng) : 3.0 * rng.normal_vector(f.dom().dim));
    }
    for (const auto& x : xs)
        if (!is_point_mass(apply(f, x, o))) return false;
    return true;
}

}  // namespace logcon
