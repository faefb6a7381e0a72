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


#include "logcon/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace logcon {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_finite(const Vec& v, const char* what)
{
    if (!v.allFinite()) throw std::invalid_argument(std::string(what) + ": non-finite coordinate");
}

void require_same_dim(Eigen::Index a, Eigen::Index b, const char* what)
{
    if (a != b) {
        std::ostringstream os;
        os << what << ": dimension mismatch (" << a << " vs " << b << ")";
        throw DimensionError(os.str());
    }
}

int vertex_dim(const std::vector<Vec>& vs, const char* what)
{
    if (vs.empty()) throw std::invalid_argument(std::string(what) + ": needs at least one vertex");
    const auto d = vs.front().size();
    for (const auto& v : vs) {
        require_same_dim(v.size(), d, what);
        require_finite(v, what);
    }
    return static_cast<int>(d);
}

const std::vector<Vec>* polytope_vertices(const ConvexSet& s)
{
    if (auto h = s.as<ConvexSet::Hull>()) return &h->vertices;
    if (auto sx = s.as<ConvexSet::Simplex>()) return &sx->vertices;
    return nullptr;
}

// Euclidean projection onto the probability simplex (sort-based).
Vec project_to_probability_simplex(const Vec& v)
{
    const Eigen::Index n = v.size();
    std::vector<double> u(v.data(), v.data() + n);
    std::sort(u.begin(), u.end(), std::greater<>());
    double cumulative = 0.0;
    double theta = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        cumulative += u[i];
        const double t = (cumulative - 1.0) / static_cast<double>(i + 1);
        if (u[i] - t > 0.0) theta = t;
    }
    return (v.array() - theta).max(0.0).matrix();
}

std::vector<Vec> sphere_samples(const Vec& center, double radius, int count)
{
    CounterRng rng(0x5a3d1e5ULL);
    std::vector<Vec> out;
    out.reserve(count);
    const auto n = center.size();
    for (int i = 0; i < count; ++i) {
        Vec z = rng.normal_vector(n);
        const double norm = z.norm();
        if (norm == 0.0) continue;
        out.push_back(center + radius * z / norm);
    }
    if (n == 1) out = {center.array() - radius, center.array() + radius};
    return out;
}

std::vector<Vec> pairwise_mixes(const std::vector<Vec>& a, const std::vector<Vec>& b, double p)
{
    std::vector<Vec> out;
    out.reserve(a.size() * b.size());
    for (const auto& x : a)
        for (const auto& y : b) out.push_back(mix(x, y, p));
    return out;
}

// Representative points whose hull approximates (or equals) the set.
std::vector<Vec> hull_generators(const ConvexSet& s, int samples)
{
    if (auto v = vertices_of(s)) return *v;
    if (auto b = s.as<ConvexSet::Ball>()) return sphere_samples(b->center, b->radius, samples);
    throw RepresentationError("minkowski_mix: no hull generators for " + describe(s));
}

}  // namespace

// -- construction -----------------------------------------------------------

ConvexSet ConvexSet::ball(Vec center, double radius)
{
    require_finite(center, "ball");
    if (!(radius >= 0.0) || !std::isfinite(radius)) throw std::invalid_argument("ball: radius must be finite and >= 0");
    const int d = static_cast<int>(center.size());
    return ConvexSet(Ball{std::move(center), radius}, d);
}

ConvexSet ConvexSet::box(Vec lo, Vec hi)
{
    require_same_dim(lo.size(), hi.size(), "box");
    for (Eigen::Index i = 0; i < lo.size(); ++i) {
        if (std::isnan(lo[i]) || std::isnan(hi[i])) throw std::invalid_argument("box: NaN bound");
        if (lo[i] > hi[i]) throw std::invalid_argument("box: lo must be <= hi componentwise");
        if (lo[i] == kInf || hi[i] == -kInf) throw std::invalid_argument("box: empty bound");
    }
    const int d = static_cast<int>(lo.size());
    return ConvexSet(Box{std::move(lo), std::move(hi)}, d);
}

ConvexSet ConvexSet::unit_cube(int n) { return box(Vec::Zero(n), Vec::Ones(n)); }

ConvexSet ConvexSet::whole(int n) { return box(Vec::Constant(n, -kInf), Vec::Constant(n, kInf)); }

ConvexSet ConvexSet::simplex(std::vector<Vec> vertices)
{
    const int d = vertex_dim(vertices, "simplex");
    return ConvexSet(Simplex{std::move(vertices)}, d);
}

ConvexSet ConvexSet::standard_simplex(int n)
{
    std::vector<Vec> vs;
    for (int i = 0; i < n; ++i) vs.push_back(Vec::Unit(n, i));
    return simplex(std::move(vs));
}

ConvexSet ConvexSet::hull(std::vector<Vec> vertices, bool approximate)
{
    const int d = vertex_dim(vertices, "hull");
    return ConvexSet(Hull{std::move(vertices), approximate}, d);
}

ConvexSet ConvexSet::product(ConvexSet left, ConvexSet right)
{
    const int d = left.dim() + right.dim();
    return ConvexSet(Product{std::make_shared<const ConvexSet>(std::move(left)),
                             std::make_shared<const ConvexSet>(std::move(right))},
                     d);
}

ConvexSet ConvexSet::point(Vec p)
{
    require_finite(p, "point");
    const int d = static_cast<int>(p.size());
    return ConvexSet(Point{std::move(p)}, d);
}

bool ConvexSet::is_bounded() const
{
    if (auto b = as<Box>()) return b->lo.allFinite() && b->hi.allFinite();
    if (auto p = as<Product>()) return p->left->is_bounded() && p->right->is_bounded();
    return true;
}

bool ConvexSet::is_approximate() const
{
    if (auto h = as<Hull>()) return h->approximate;
    if (auto p = as<Product>()) return p->left->is_approximate() || p->right->is_approximate();
    return false;
}

bool ConvexSet::is_whole_space() const
{
    if (auto b = as<Box>()) return (b->lo.array() == -kInf).all() && (b->hi.array() == kInf).all();
    if (auto p = as<Product>()) return p->left->is_whole_space() && p->right->is_whole_space();
    return false;
}

namespace {

void write_vec(std::ostream& os, const Vec& v)
{
    os << '(';
    for (Eigen::Index i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
    os << ')';
}

}  // namespace

std::string describe(const ConvexSet& s)
{
    std::ostringstream os;
    std::visit(
        [&](const auto& b) {
            using T = std::decay_t<decltype(b)>;
            if constexpr (std::is_same_v<T, ConvexSet::Ball>) {
                os << "Ball(";
                write_vec(os, b.center);
                os << ", " << b.radius << ')';
            } else if constexpr (std::is_same_v<T, ConvexSet::Box>) {
                if (s.is_whole_space()) {
                    os << "R^" << s.dim();
                    return;
                }
                os << "Box(";
                write_vec(os, b.lo);
                os << ", ";
                write_vec(os, b.hi);
                os << ')';
            } else if constexpr (std::is_same_v<T, ConvexSet::Simplex> || std::is_same_v<T, ConvexSet::Hull>) {
                os << (std::is_same_v<T, ConvexSet::Simplex> ? "Simplex{" : "Hull{");
                for (std::size_t i = 0; i < b.vertices.size(); ++i) {
                    if (i) os << ", ";
                    write_vec(os, b.vertices[i]);
                }
                os << '}';
            } else if constexpr (std::is_same_v<T, ConvexSet::Product>) {
                os << describe(*b.left) << " x " << describe(*b.right);
            } else {
                os << "Point";
                write_vec(os, b.p);
            }
        },
        s.body());
    return os.str();
}

Space Space::unit() { return Space{}; }

Space Space::reals(int n) { return of(ConvexSet::whole(n)); }

Space Space::of(ConvexSet carrier)
{
    if (carrier.dim() < 1) throw std::invalid_argument("space: dimension must be >= 1");
    const int d = carrier.dim();
    return Space{d, std::move(carrier)};
}

std::string describe(const Space& s)
{
    if (s.is_unit()) return "I";
    return describe(s.carrier);
}

// -- operations -------------------------------------------------------------

Vec mix(const Vec& x, const Vec& y, double p)
{
    require_same_dim(x.size(), y.size(), "mix");
    return p * x + (1.0 - p) * y;
}

Vec concat(const Vec& a, const Vec& b)
{
    Vec out(a.size() + b.size());
    out << a, b;
    return out;
}

ConvexSet translate(const ConvexSet& s, const Vec& shift)
{
    require_same_dim(s.dim(), shift.size(), "translate");
    return std::visit(
        [&](const auto& b) -> ConvexSet {
            using T = std::decay_t<decltype(b)>;
            if constexpr (std::is_same_v<T, ConvexSet::Ball>) {
                return ConvexSet::ball(b.center + shift, b.radius);
            } else if constexpr (std::is_same_v<T, ConvexSet::Box>) {
                return ConvexSet::box(b.lo + shift, b.hi + shift);
            } else if constexpr (std::is_same_v<T, ConvexSet::Point>) {
                return ConvexSet::point(b.p + shift);
            } else if constexpr (std::is_same_v<T, ConvexSet::Product>) {
                const auto k = b.left->dim();
                return ConvexSet::product(translate(*b.left, shift.head(k)),
                                          translate(*b.right, shift.tail(shift.size() - k)));
            } else {
                std::vector<Vec> vs;
                for (const auto& v : b.vertices) vs.push_back(v + shift);
                if constexpr (std::is_same_v<T, ConvexSet::Simplex>) return ConvexSet::simplex(std::move(vs));
                else return ConvexSet::hull(std::move(vs), b.approximate);
            }
        },
        s.body());
}

ConvexSet minkowski_mix(const ConvexSet& a, const ConvexSet& b, double p, int samples)
{
    require_same_dim(a.dim(), b.dim(), "minkowski_mix");
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("minkowski_mix: p must lie in [0,1]");

    const auto* pa = a.as<ConvexSet::Product>();
    const auto* pb = b.as<ConvexSet::Product>();
    if (pa || pb) {
        if (!pa || !pb) throw RepresentationError("minkowski_mix: Product can only be mixed with a Product");
        if (pa->left->dim() != pb->left->dim())
            throw RepresentationError("minkowski_mix: Product factors have different splits");
        return ConvexSet::product(minkowski_mix(*pa->left, *pb->left, p, samples),
                                  minkowski_mix(*pa->right, *pb->right, p, samples));
    }
    if (p == 1.0) return a;
    if (p == 0.0) return b;

    if (auto x = a.as<ConvexSet::Point>()) {
        if (auto y = b.as<ConvexSet::Point>()) return ConvexSet::point(mix(x->p, y->p, p));
        if (auto y = b.as<ConvexSet::Ball>()) return ConvexSet::ball(mix(x->p, y->center, p), (1.0 - p) * y->radius);
        if (auto y = b.as<ConvexSet::Box>()) return ConvexSet::box(mix(x->p, y->lo, p), mix(x->p, y->hi, p));
    }
    if (auto y = b.as<ConvexSet::Point>()) {
        if (auto x = a.as<ConvexSet::Ball>()) return ConvexSet::ball(mix(x->center, y->p, p), p * x->radius);
        if (auto x = a.as<ConvexSet::Box>()) return ConvexSet::box(mix(x->lo, y->p, p), mix(x->hi, y->p, p));
    }
    if (auto x = a.as<ConvexSet::Ball>())
        if (auto y = b.as<ConvexSet::Ball>())
            return ConvexSet::ball(mix(x->center, y->center, p), p * x->radius + (1.0 - p) * y->radius);
    if (auto x = a.as<ConvexSet::Box>())
        if (auto y = b.as<ConvexSet::Box>()) return ConvexSet::box(mix(x->lo, y->lo, p), mix(x->hi, y->hi, p));

    if (!a.is_bounded() || !b.is_bounded())
        throw RepresentationError("minkowski_mix: unbounded box mixed with a bounded polytope");

    const bool exact = !a.as<ConvexSet::Ball>() && !b.as<ConvexSet::Ball>();
    auto mixes = pairwise_mixes(hull_generators(a, samples), hull_generators(b, samples), p);
    return ConvexSet::hull(std::move(mixes), !exact || a.is_approximate() || b.is_approximate());
}

namespace {

// Whether x lies within `tol` of a counter-clockwise convex polygon.
bool polygon_within(const std::vector<Vec>& poly, const Vec& x, double tol)
{
    if (poly.size() == 1) return (x - poly[0]).norm() <= tol;
    if (poly.size() == 2) {
        const Vec e = poly[1] - poly[0];
        const double t = std::clamp((x - poly[0]).dot(e) / e.squaredNorm(), 0.0, 1.0);
        return (x - poly[0] - t * e).norm() <= tol;
    }
    for (std::size_t i = 0; i < poly.size(); ++i) {
        const Vec& a = poly[i];
        const Vec& b = poly[(i + 1) % poly.size()];
        const double side = (b[0] - a[0]) * (x[1] - a[1]) - (b[1] - a[1]) * (x[0] - a[0]);
        if (side < -tol * (b - a).norm()) return false;
    }
    return true;
}

// Nearest point of a counter-clockwise convex polygon.
Vec project_onto_polygon(const std::vector<Vec>& poly, const Vec& x)
{
    if (poly.size() >= 3 && polygon_within(poly, x, 0.0)) return x;
    Vec best = poly[0];
    double best_d2 = (x - best).squaredNorm();
    const std::size_t edges = poly.size() == 1 ? 0 : (poly.size() == 2 ? 1 : poly.size());
    for (std::size_t i = 0; i < edges; ++i) {
        const Vec& a = poly[i];
        const Vec e = poly[(i + 1) % poly.size()] - a;
        const double t = std::clamp((x - a).dot(e) / e.squaredNorm(), 0.0, 1.0);
        const Vec y = a + t * e;
        if (const double d2 = (x - y).squaredNorm(); d2 < best_d2) {
            best_d2 = d2;
            best = y;
        }
    }
    return best;
}

}  // namespace

bool contains(const ConvexSet& s, const Vec& x, double tol)
{
    require_same_dim(s.dim(), x.size(), "contains");
    return std::visit(
        [&](const auto& b) -> bool {
            using T = std::decay_t<decltype(b)>;
            if constexpr (std::is_same_v<T, ConvexSet::Ball>) {
                return (x - b.center).norm() <= b.radius + tol;
            } else if constexpr (std::is_same_v<T, ConvexSet::Box>) {
                return ((x.array() >= b.lo.array() - tol) && (x.array() <= b.hi.array() + tol)).all();
            } else if constexpr (std::is_same_v<T, ConvexSet::Point>) {
                return (x - b.p).norm() <= tol;
            } else if constexpr (std::is_same_v<T, ConvexSet::Product>) {
                const auto k = b.left->dim();
                return contains(*b.left, x.head(k), tol) && contains(*b.right, x.tail(x.size() - k), tol);
            } else {
                if (x.size() == 2)
                    if (auto poly = polygon_of(s)) return polygon_within(*poly, x, tol);
                const auto proj = project_onto_hull(b.vertices, x);
                return (x - proj.point).squaredNorm() <= tol * tol;
            }
        },
        s.body());
}

HullProjection project_onto_hull(const std::vector<Vec>& vertices, const Vec& x, int max_iterations, double tol)
{
    const auto k = static_cast<Eigen::Index>(vertices.size());
    const auto n = x.size();
    if (k == 0) throw std::invalid_argument("project_onto_hull: no vertices");
    Mat v(n, k);
    for (Eigen::Index j = 0; j < k; ++j) {
        require_same_dim(vertices[j].size(), n, "project");
        v.col(j) = vertices[j];
    }

    HullProjection out;
    if (k == 1) {
        out.point = v.col(0);
        out.weights = Vec::Ones(1);
        out.converged = true;
        return out;
    }
    if (k == 2) {
        const Vec d = v.col(1) - v.col(0);
        const double dd = d.squaredNorm();
        const double t = dd > 0.0 ? std::clamp(d.dot(x - v.col(0)) / dd, 0.0, 1.0) : 0.0;
        out.weights = Vec(2);
        out.weights << 1.0 - t, t;
        out.point = v * out.weights;
        out.converged = true;
        return out;
    }

    const Mat gram = v.transpose() * v;
    const Vec vx = v.transpose() * x;
    const double lipschitz = std::max(Eigen::SelfAdjointEigenSolver<Mat>(gram, Eigen::EigenvaluesOnly).eigenvalues().maxCoeff(),
                                      std::numeric_limits<double>::min());
    auto objective = [&](const Vec& w) { return 0.5 * (v * w - x).squaredNorm(); };

    // Accelerated projected gradient with restart on objective increase.
    Vec w = Vec::Constant(k, 1.0 / static_cast<double>(k));
    Vec momentum = w;
    double t = 1.0;
    double f = objective(w);
    int it = 0;
    bool stalled = false;
    for (; it < max_iterations; ++it) {
        const Vec grad = gram * momentum - vx;
        Vec next = project_to_probability_simplex(momentum - grad / lipschitz);
        const double f_next = objective(next);
        if (f_next > f) {
            // restart from the last accepted iterate
            momentum = w;
            t = 1.0;
            continue;
        }
        const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
        momentum = next + ((t - 1.0) / t_next) * (next - w);
        t = t_next;
        const double improvement = f - f_next;
        w = std::move(next);
        f = f_next;
        if (improvement < tol) {
            stalled = true;
            break;
        }
    }
    out.iterations = it;
    out.weights = w;
    out.point = v * w;
    out.converged = stalled;

    // Exact solve on the detected support, growing it while KKT fails.
    const double scale = 1.0 + x.norm() + v.cwiseAbs().maxCoeff();
    std::vector<Eigen::Index> support;
    for (Eigen::Index j = 0; j < k; ++j)
        if (w[j] > 1e-9) support.push_back(j);
    for (int round = 0; round <= 2 * static_cast<int>(k); ++round) {
        if (support.empty()) break;
        const Vec base = v.col(support[0]);
        Mat d(n, static_cast<Eigen::Index>(support.size()) - 1);
        for (std::size_t i = 1; i < support.size(); ++i) d.col(static_cast<Eigen::Index>(i) - 1) = v.col(support[i]) - base;
        Vec ws = Vec::Zero(k);
        if (d.cols() > 0) {
            const Vec u = d.completeOrthogonalDecomposition().solve(x - base);
            ws[support[0]] = 1.0 - u.sum();
            for (std::size_t i = 1; i < support.size(); ++i) ws[support[i]] = u[static_cast<Eigen::Index>(i) - 1];
        } else {
            ws[support[0]] = 1.0;
        }
        Eigen::Index negative = 0;
        if (ws.minCoeff(&negative) < -1e-12) {
            support.erase(std::find(support.begin(), support.end(), negative));
            continue;
        }
        ws = ws.cwiseMax(0.0);
        ws /= ws.sum();
        const Vec y = v * ws;
        const Vec r = x - y;
        // y is optimal iff <v_j - y, x - y> <= 0 for every vertex
        const Vec slack = v.transpose() * r - Vec::Constant(k, y.dot(r));
        Eigen::Index worst = 0;
        const double worst_slack = slack.maxCoeff(&worst);
        if (worst_slack <= 1e-13 * scale * scale) {
            if (objective(ws) <= f + 1e-15 * scale * scale) {
                out.weights = ws;
                out.point = y;
            }
            out.converged = true;
            break;
        }
        if (std::find(support.begin(), support.end(), worst) != support.end()) break;
        support.push_back(worst);
    }
    return out;
}

Vec project(const ConvexSet& s, const Vec& x)
{
    require_same_dim(s.dim(), x.size(), "project");
    return std::visit(
        [&](const auto& b) -> Vec {
            using T = std::decay_t<decltype(b)>;
            if constexpr (std::is_same_v<T, ConvexSet::Ball>) {
                const Vec d = x - b.center;
                const double norm = d.norm();
                if (norm <= b.radius) return x;
                return b.center + (b.radius / norm) * d;
            } else if constexpr (std::is_same_v<T, ConvexSet::Box>) {
                return x.cwiseMax(b.lo).cwiseMin(b.hi);
            } else if constexpr (std::is_same_v<T, ConvexSet::Point>) {
                return b.p;
            } else if constexpr (std::is_same_v<T, ConvexSet::Product>) {
                const auto k = b.left->dim();
                return concat(project(*b.left, x.head(k)), project(*b.right, x.tail(x.size() - k)));
            } else {
                if (x.size() == 2)
                    if (auto poly = polygon_of(s)) return project_onto_polygon(*poly, x);
                auto proj = project_onto_hull(b.vertices, x);
                if (!proj.converged)
                    throw NumericError("project: hull solver hit the iteration cap", std::move(proj.point));
                return proj.point;
            }
        },
        s.body());
}

double distance(const ConvexSet& s, const Vec& x) { return (x - project(s, x)).norm(); }

ConvexSet hull_of(const std::vector<Vec>& points)
{
    if (points.empty()) throw std::invalid_argument("hull_of: empty exemplar set");
    if (points.size() == 1) return ConvexSet::point(points.front());
    return ConvexSet::hull(points);
}

Space product_space(const Space& x, const Space& y)
{
    if (x.is_unit()) return y;
    if (y.is_unit()) return x;
    return Space::of(ConvexSet::product(x.carrier, y.carrier));
}

double support(const ConvexSet& s, const Vec& d)
{
    require_same_dim(s.dim(), d.size(), "support");
    return std::visit(
        [&](const auto& b) -> double {
            using T = std::decay_t<decltype(b)>;
            if constexpr (std::is_same_v<T, ConvexSet::Ball>) {
                return b.center.dot(d) + b.radius * d.norm();
            } else if constexpr (std::is_same_v<T, ConvexSet::Box>) {
                double total = 0.0;
                for (Eigen::Index i = 0; i < d.size(); ++i) {
                    if (d[i] > 0.0) total += d[i] * b.hi[i];
                    else if (d[i] < 0.0) total += d[i] * b.lo[i];
                }
                return total;
            } else if constexpr (std::is_same_v<T, ConvexSet::Point>) {
                return b.p.dot(d);
            } else if constexpr (std::is_same_v<T, ConvexSet::Product>) {
                const auto k = b.left->dim();
                return support(*b.left, d.head(k)) + support(*b.right, d.tail(d.size() - k));
            } else {
                double best = -kInf;
                for (const auto& v : b.vertices) best = std::max(best, v.dot(d));
                return best;
            }
        },
        s.body());
}

Bounds bounding_box(const ConvexSet& s)
{
    const int n = s.dim();
    Bounds out{Vec(n), Vec(n)};
    for (int i = 0; i < n; ++i) {
        const Vec e = Vec::Unit(n, i);
        out.hi[i] = support(s, e);
        out.lo[i] = -support(s, -e);
    }
    return out;
}

bool is_flat(const ConvexSet& s)
{
    if (auto p = s.as<ConvexSet::Point>()) return p->p.size() > 0;
    if (auto b = s.as<ConvexSet::Ball>()) return b->radius == 0.0;
    if (auto b = s.as<ConvexSet::Box>()) return ((b->hi - b->lo).array() == 0.0).any();
    if (auto p = s.as<ConvexSet::Product>()) return is_flat(*p->left) || is_flat(*p->right);
    const auto& vs = *polytope_vertices(s);
    const auto n = s.dim();
    if (static_cast<Eigen::Index>(vs.size()) <= n) return true;
    Mat d(n, static_cast<Eigen::Index>(vs.size()) - 1);
    for (std::size_t i = 1; i < vs.size(); ++i) d.col(static_cast<Eigen::Index>(i) - 1) = vs[i] - vs[0];
    Eigen::FullPivLU<Mat> lu(d);
    lu.setThreshold(1e-12);
    return lu.rank() < n;
}

std::optional<double> volume(const ConvexSet& s)
{
    if (is_flat(s)) return 0.0;
    if (auto b = s.as<ConvexSet::Box>()) {
        if (!s.is_bounded()) return std::nullopt;
        return (b->hi - b->lo).prod();
    }
    if (auto b = s.as<ConvexSet::Ball>()) {
        const double n = b->center.size();
        return std::pow(std::numbers::pi, n / 2.0) / std::tgamma(n / 2.0 + 1.0) * std::pow(b->radius, n);
    }
    if (auto p = s.as<ConvexSet::Product>()) {
        auto l = volume(*p->left);
        auto r = volume(*p->right);
        if (l && r) return *l * *r;
        return std::nullopt;
    }
    const auto& vs = *polytope_vertices(s);
    const auto n = s.dim();
    if (static_cast<Eigen::Index>(vs.size()) == n + 1) {
        Mat d(n, n);
        for (Eigen::Index i = 0; i < n; ++i) d.col(i) = vs[static_cast<std::size_t>(i) + 1] - vs[0];
        return std::abs(d.determinant()) / std::tgamma(static_cast<double>(n) + 1.0);
    }
    return std::nullopt;
}

std::optional<std::vector<Vec>> vertices_of(const ConvexSet& s)
{
    if (auto vs = polytope_vertices(s)) return *vs;
    if (auto p = s.as<ConvexSet::Point>()) return std::vector<Vec>{p->p};
    if (auto b = s.as<ConvexSet::Box>()) {
        const int n = s.dim();
        if (!s.is_bounded() || n > 16) return std::nullopt;
        std::vector<Vec> out;
        for (unsigned mask = 0; mask < (1u << n); ++mask) {
            Vec c(n);
            for (int i = 0; i < n; ++i) c[i] = (mask >> i) & 1u ? b->hi[i] : b->lo[i];
            out.push_back(std::move(c));
        }
        return out;
    }
    return std::nullopt;
}

namespace {

Vec dirichlet_weights(std::size_t k, CounterRng& rng)
{
    Vec w(static_cast<Eigen::Index>(k));
    for (std::size_t i = 0; i < k; ++i) w[static_cast<Eigen::Index>(i)] = -std::log(rng.uniform());
    return w / w.sum();
}

Vec combine(const std::vector<Vec>& vs, const Vec& w)
{
    Vec out = Vec::Zero(vs.front().size());
    for (std::size_t i = 0; i < vs.size(); ++i) out += w[static_cast<Eigen::Index>(i)] * vs[i];
    return out;
}

Vec uniform_in_ball(const ConvexSet::Ball& b, CounterRng& rng)
{
    const auto n = b.center.size();
    Vec z = rng.normal_vector(n);
    const double norm = z.norm();
    const double radial = b.radius * std::pow(rng.uniform(), 1.0 / static_cast<double>(n));
    return b.center + (norm > 0.0 ? radial / norm : 0.0) * z;
}

Vec uniform_in_box(const ConvexSet::Box& b, CounterRng& rng)
{
    if (!b.lo.allFinite() || !b.hi.allFinite()) throw std::invalid_argument("sample: box is unbounded");
    Vec out(b.lo.size());
    for (Eigen::Index i = 0; i < out.size(); ++i) out[i] = rng.uniform(b.lo[i], b.hi[i]);
    return out;
}

}  // namespace

Vec sample_point(const ConvexSet& s, CounterRng& rng)
{
    if (auto h = s.as<ConvexSet::Hull>()) return combine(h->vertices, dirichlet_weights(h->vertices.size(), rng));
    if (auto p = s.as<ConvexSet::Product>()) {
        Vec l = sample_point(*p->left, rng);
        return concat(l, sample_point(*p->right, rng));
    }
    return sample_uniform(s, rng);
}

Vec sample_uniform(const ConvexSet& s, CounterRng& rng, int rejection_cap)
{
    return std::visit(
        [&](const auto& b) -> Vec {
            using T = std::decay_t<decltype(b)>;
            if constexpr (std::is_same_v<T, ConvexSet::Ball>) {
                return uniform_in_ball(b, rng);
            } else if constexpr (std::is_same_v<T, ConvexSet::Box>) {
                return uniform_in_box(b, rng);
            } else if constexpr (std::is_same_v<T, ConvexSet::Point>) {
                return b.p;
            } else if constexpr (std::is_same_v<T, ConvexSet::Simplex>) {
                // uniform with respect to the simplex's own affine measure
                return combine(b.vertices, dirichlet_weights(b.vertices.size(), rng));
            } else if constexpr (std::is_same_v<T, ConvexSet::Product>) {
                Vec l = sample_uniform(*b.left, rng, rejection_cap);
                return concat(l, sample_uniform(*b.right, rng, rejection_cap));
            } else {
                const auto bounds = bounding_box(s);
                const ConvexSet::Box frame{bounds.lo, bounds.hi};
                for (int attempt = 0; attempt < rejection_cap; ++attempt) {
                    Vec x = uniform_in_box(frame, rng);
                    if (contains(s, x, 0.0)) return x;
                }
                throw NumericError("sample_uniform: rejection cap exceeded for " + describe(s));
            }
        },
        s.body());
}

std::optional<ConvexSet> intersect_boxes(const ConvexSet& a, const ConvexSet& b)
{
    const auto* x = a.as<ConvexSet::Box>();
    const auto* y = b.as<ConvexSet::Box>();
    if (!x || !y) throw RepresentationError("intersect_boxes: both operands must be boxes");
    require_same_dim(a.dim(), b.dim(), "intersect_boxes");
    Vec lo = x->lo.cwiseMax(y->lo);
    Vec hi = x->hi.cwiseMin(y->hi);
    if (((hi - lo).array() < 0.0).any()) return std::nullopt;
    return ConvexSet::box(std::move(lo), std::move(hi));
}

Slice slice(const ConvexSet& s, const Vec& fixed, bool fixed_first)
{
    const auto n = static_cast<Eigen::Index>(s.dim());
    const auto m = fixed.size();
    if (m > n) throw DimensionError("slice: fixed block larger than the set");
    const auto k = n - m;
    auto keep = [&](const Vec& v) -> Vec { return fixed_first ? Vec(v.tail(k)) : Vec(v.head(k)); };
    auto held = [&](const Vec& v) -> Vec { return fixed_first ? Vec(v.head(m)) : Vec(v.tail(m)); };
    if (m == 0) return {SliceKind::set, s};
    if (k == 0) return contains(s, fixed) ? Slice{SliceKind::set, ConvexSet::point(Vec(0))} : Slice{SliceKind::empty, {}};

    if (auto b = s.as<ConvexSet::Ball>()) {
        const double gap = (held(b->center) - fixed).squaredNorm();
        const double r2 = b->radius * b->radius;
        if (gap > r2) return {SliceKind::empty, {}};
        return {SliceKind::set, ConvexSet::ball(keep(b->center), std::sqrt(r2 - gap))};
    }
    if (auto b = s.as<ConvexSet::Box>()) {
        const Vec lo = held(b->lo), hi = held(b->hi);
        if (((fixed.array() < lo.array()) || (fixed.array() > hi.array())).any()) return {SliceKind::empty, {}};
        return {SliceKind::set, ConvexSet::box(keep(b->lo), keep(b->hi))};
    }
    if (auto p = s.as<ConvexSet::Point>()) {
        if ((held(p->p) - fixed).norm() > 1e-12) return {SliceKind::empty, {}};
        return {SliceKind::set, ConvexSet::point(keep(p->p))};
    }
    if (auto p = s.as<ConvexSet::Product>()) {
        const auto l = static_cast<Eigen::Index>(p->left->dim());
        const auto r = n - l;
        if (!fixed_first) {
            // fixed covers the trailing m coordinates
            if (m <= r) {
                auto inner = slice(*p->right, fixed, false);
                if (inner.kind != SliceKind::set) return inner;
                if (m == r) return {SliceKind::set, *p->left};
                return {SliceKind::set, ConvexSet::product(*p->left, *inner.set)};
            }
            if (!contains(*p->right, fixed.tail(r))) return {SliceKind::empty, {}};
            return slice(*p->left, fixed.head(m - r), false);
        }
        if (m <= l) {
            auto inner = slice(*p->left, fixed, true);
            if (inner.kind != SliceKind::set) return inner;
            if (m == l) return {SliceKind::set, *p->right};
            return {SliceKind::set, ConvexSet::product(*inner.set, *p->right)};
        }
        if (!contains(*p->left, fixed.head(l))) return {SliceKind::empty, {}};
        return slice(*p->right, fixed.tail(m - l), true);
    }
    if (n == 2 && m == 1) {
        Vec origin = Vec::Zero(2), dir = Vec::Zero(2);
        origin[fixed_first ? 0 : 1] = fixed[0];
        dir[fixed_first ? 1 : 0] = 1.0;
        if (auto iv = line_interval(s, origin, dir)) {
            if (iv->first > iv->second) return {SliceKind::empty, {}};
            return {SliceKind::set, ConvexSet::box(Vec::Constant(1, iv->first), Vec::Constant(1, iv->second))};
        }
    }
    return {SliceKind::unsupported, {}};
}

namespace {

double cross2(const Vec& o, const Vec& a, const Vec& b) { return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]); }

}  // namespace

std::optional<std::vector<Vec>> polygon_of(const ConvexSet& s)
{
    if (s.dim() != 2 || !s.is_bounded()) return std::nullopt;
    if (!s.as<ConvexSet::Box>() && !polytope_vertices(s)) return std::nullopt;
    std::vector<Vec> pts = *vertices_of(s);
    std::sort(pts.begin(), pts.end(), [](const Vec& a, const Vec& b) { return a[0] < b[0] || (a[0] == b[0] && a[1] < b[1]); });
    if (pts.size() < 3) return pts;
    // Andrew's monotone chain.
    std::vector<Vec> hull(2 * pts.size());
    std::size_t k = 0;
    for (const auto& q : pts) {
        while (k >= 2 && cross2(hull[k - 2], hull[k - 1], q) <= 0.0) --k;
        hull[k++] = q;
    }
    for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
        while (k >= lower && cross2(hull[k - 2], hull[k - 1], pts[i]) <= 0.0) --k;
        hull[k++] = pts[i];
    }
    hull.resize(k - 1);
    return hull;
}

double polygon_area(const std::vector<Vec>& polygon)
{
    double twice = 0.0;
    for (std::size_t i = 0; i < polygon.size(); ++i) {
        const Vec& a = polygon[i];
        const Vec& b = polygon[(i + 1) % polygon.size()];
        twice += a[0] * b[1] - a[1] * b[0];
    }
    return 0.5 * twice;
}

std::vector<Vec> clip_polygon(const std::vector<Vec>& polygon, const Vec& lo, const Vec& hi)
{
    std::vector<Vec> out = polygon;
    // Sutherland-Hodgman against the four half-planes of the box.
    for (int axis = 0; axis < 2 && !out.empty(); ++axis) {
        for (int side = 0; side < 2 && !out.empty(); ++side) {
            const double bound = side == 0 ? lo[axis] : hi[axis];
            auto inside = [&](const Vec& v) { return side == 0 ? v[axis] >= bound : v[axis] <= bound; };
            std::vector<Vec> next;
            for (std::size_t i = 0; i < out.size(); ++i) {
                const Vec& a = out[i];
                const Vec& b = out[(i + 1) % out.size()];
                const bool ia = inside(a), ib = inside(b);
                if (ia) next.push_back(a);
                if (ia != ib) {
                    const double t = (bound - a[axis]) / (b[axis] - a[axis]);
                    next.push_back(a + t * (b - a));
                }
            }
            out = std::move(next);
        }
    }
    return out;
}

std::optional<std::pair<double, double>> line_interval(const ConvexSet& s, const Vec& origin, const Vec& dir)
{
    require_same_dim(s.dim(), origin.size(), "line_interval");
    require_same_dim(s.dim(), dir.size(), "line_interval");
    constexpr double inf = std::numeric_limits<double>::infinity();
    double lo = -inf, hi = inf;
    // Clips [lo, hi] to {t | a + t b <= c}.
    auto halfspace = [&](double a, double b, double c) {
        if (b == 0.0) {
            if (a > c) hi = -inf;
            return;
        }
        const double t = (c - a) / b;
        if (b > 0.0) hi = std::min(hi, t);
        else lo = std::max(lo, t);
    };
    if (auto b = s.as<ConvexSet::Box>()) {
        for (Eigen::Index i = 0; i < origin.size(); ++i) {
            halfspace(origin[i], dir[i], b->hi[i]);
            halfspace(-origin[i], -dir[i], -b->lo[i]);
        }
        return std::pair{lo, hi};
    }
    if (auto b = s.as<ConvexSet::Ball>()) {
        const Vec d = origin - b->center;
        const double a2 = dir.squaredNorm();
        if (a2 == 0.0) return d.norm() <= b->radius ? std::pair{-inf, inf} : std::pair{inf, -inf};
        const double half = d.dot(dir) / a2;
        const double disc = half * half - (d.squaredNorm() - b->radius * b->radius) / a2;
        if (disc < 0.0) return std::pair{inf, -inf};
        return std::pair{-half - std::sqrt(disc), -half + std::sqrt(disc)};
    }
    if (auto p = s.as<ConvexSet::Point>()) {
        if (origin.size() == 0) return std::pair{-inf, inf};
        const double a2 = dir.squaredNorm();
        const double t = a2 > 0.0 ? (p->p - origin).dot(dir) / a2 : 0.0;
        if ((origin + t * dir - p->p).norm() > 1e-12) return std::pair{inf, -inf};
        return a2 > 0.0 ? std::pair{t, t} : std::pair{-inf, inf};
    }
    if (auto p = s.as<ConvexSet::Product>()) {
        const auto k = p->left->dim();
        const auto n = origin.size() - k;
        const auto l = line_interval(*p->left, origin.head(k), dir.head(k));
        const auto r = line_interval(*p->right, origin.tail(n), dir.tail(n));
        if (!l || !r) return std::nullopt;
        return std::pair{std::max(l->first, r->first), std::min(l->second, r->second)};
    }
    auto polygon = polygon_of(s);
    if (polygon && polygon->size() == 1) return line_interval(ConvexSet::point(polygon->front()), origin, dir);
    if (polygon && polygon->size() == 2) {
        const Vec& a = (*polygon)[0];
        const Vec e = (*polygon)[1] - a;
        const Vec w = a - origin;
        const double det = dir[0] * e[1] - dir[1] * e[0];
        const double off = w[0] * e[1] - w[1] * e[0];
        if (det == 0.0) {
            if (std::abs(off) > 1e-12 * std::max(1.0, e.norm() * w.norm())) return std::pair{inf, -inf};
            const double d2 = dir.squaredNorm();
            if (d2 == 0.0) return contains(s, origin) ? std::pair{-inf, inf} : std::pair{inf, -inf};
            const double t0 = w.dot(dir) / d2, t1 = (w + e).dot(dir) / d2;
            return std::pair{std::min(t0, t1), std::max(t0, t1)};
        }
        // origin + t dir = a + u e
        const double t = off / det;
        const double u = (w[0] * dir[1] - w[1] * dir[0]) / det;
        if (u < 0.0 || u > 1.0) return std::pair{inf, -inf};
        return std::pair{t, t};
    }
    if (auto poly = polygon; poly && poly->size() >= 3) {
        for (std::size_t i = 0; i < poly->size(); ++i) {
            const Vec& a = (*poly)[i];
            const Vec& b = (*poly)[(i + 1) % poly->size()];
            // Interior lies to the left of a -> b: n . x <= n . a with n the right normal.
            Vec normal(2);
            normal << b[1] - a[1], a[0] - b[0];
            halfspace(normal.dot(origin), normal.dot(dir), normal.dot(a));
        }
        return std::pair{lo, hi};
    }
    return std::nullopt;
}

}  // namespace logcon
