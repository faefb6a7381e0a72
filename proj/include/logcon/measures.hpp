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


#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "logcon/concepts.hpp"
#include "logcon/geometry.hpp"

namespace logcon {

enum class Strategy { automatic, closed_form, quadrature, monte_carlo };

std::string to_string(Strategy s);

/// A numeric value together with its error estimate and how it was obtained.
///
/// `std_error` is a Monte Carlo standard error, or |Q_n - Q_{n/2}| for
/// quadrature, or zero for closed forms.
struct Estimate {
    double value = 0.0;
    double std_error = 0.0;
    Strategy strategy = Strategy::closed_form;
};

/// How integrals against a state are evaluated. `automatic` prefers a closed
/// form, then tensor Gauss-Legendre quadrature (effective dimension <= 3),
/// then Monte Carlo with the given sample count and seed.
struct Integrator {
    Strategy strategy = Strategy::automatic;
    int nodes = 64;
    std::size_t samples = 100000;
    std::uint64_t seed = 0x10c0;
};

class IntegrationError : public std::runtime_error {
public:
    IntegrationError(const std::string& what, Strategy strategy, double error_estimate)
        : std::runtime_error(what), strategy_(strategy), error_(error_estimate) {}
    Strategy strategy() const noexcept { return strategy_; }
    double error_estimate() const noexcept { return error_; }

private:
    Strategy strategy_;
    double error_;
};

enum class Density1DKind { laplace, logistic };

/// A sub-probability measure on a space.
class State {
public:
    struct Dirac {
        Vec point;
    };
    struct Uniform {
        ConvexSet region;
        double volume;  // NaN when only rejection sampling can estimate it
    };
    struct Gaussian {
        Vec mean;
        Mat cov;
        Mat factor;  // cov = factor * factor^T, columns span the support
        double log_norm;  // log kappa on the affine support; NaN when singular
    };
    struct Density1D {
        Density1DKind kind;
        double location;
        double scale;
    };
    struct Scaled {
        double factor;
        double factor_error;
        std::shared_ptr<const State> inner;
    };
    /// Weighted points. When `iid`, each point is one of equally likely Monte
    /// Carlo draws and mass queries report a standard error.
    struct SampleCloud {
        std::vector<Vec> points;
        std::vector<double> weights;
        bool iid = false;
    };
    /// Product measure over a split of the coordinates.
    struct Product {
        std::shared_ptr<const State> left;
        std::shared_ptr<const State> right;
    };
    /// Lebesgue density supported on a bounded region.
    struct Density {
        std::function<double(const Vec&)> rho;
        ConvexSet support;
        std::string label;
    };
    using Body = std::variant<Dirac, Uniform, Gaussian, Density1D, Scaled, SampleCloud, Product, Density>;

    State(Space space, Body body) : space_(std::move(space)), body_(std::move(body)) {}

    const Space& space() const noexcept { return space_; }
    int dim() const noexcept { return space_.dim; }
    const Body& body() const noexcept { return body_; }
    template <class T>
    const T* as() const noexcept { return std::get_if<T>(&body_); }

private:
    Space space_;
    Body body_;
};

std::string describe(const State& s);

State dirac(const Vec& x);
/// Uniform probability on a bounded region with positive volume.
State uniform(const ConvexSet& region);
/// Throws std::invalid_argument unless cov is symmetric positive semi-definite.
State gaussian(const Vec& mean, const Mat& cov);
State density1d(Density1DKind kind, double location, double scale);
State laplace(double location, double scale);
State logistic(double location, double scale);
State scaled(double factor, const State& inner, double factor_error = 0.0);
State zero_state(const Space& space);
State sample_cloud(const Space& space, std::vector<Vec> points, std::vector<double> weights, bool iid = false);
State product_state(const State& left, const State& right);
/// A state with Lebesgue density rho on a bounded support; mass is not checked.
State density_state(std::function<double(const Vec&)> rho, const ConvexSet& support, std::string label = "density");
/// The unit-space state of a given mass, i.e. a scalar.
State scalar_state(double value, double error = 0.0);

State with_space(const State& s, const Space& space);

/// Total mass, exact except for Density bodies (quadrature).
double total_mass(const State& s);
Estimate total_mass_estimate(const State& s, const Integrator& integrator = {});

bool is_zero(const State& s);
/// Zero or a point mass (after peeling scale factors).
bool is_point_mass(const State& s, Vec* where = nullptr, double* weight = nullptr);

/// omega(A).
Estimate mass(const State& s, const ConvexSet& region, const Integrator& integrator = {});

/// Integral of a function against the state.
Estimate integrate(const State& s, const std::function<double(const Vec&)>& f, const Integrator& integrator = {});

/// Integral of a concept against the state.
Estimate pair(const State& s, const Concept& c, const Integrator& integrator = {});

/// n i.i.d. draws from the normalized state. Throws std::domain_error for a
/// zero state and NumericError when rejection sampling exceeds its cap.
std::vector<Vec> sample(const State& s, std::size_t n, std::uint64_t seed);
Vec sample_one(const State& s, CounterRng& rng);

/// Lebesgue density at x where one exists.
std::optional<double> density(const State& s, const Vec& x);

/// The pushforward along x -> x + shift.
State translate(const State& s, const Vec& shift);

/// Pushforward of a Gaussian (or Dirac) along x -> M x + c; nullopt otherwise.
std::optional<State> affine_image(const State& s, const Mat& m, const Vec& c);

/// Converts the state into a weighted point cloud (exact for clouds and point
/// masses, Monte Carlo otherwise).
State to_cloud(const State& s, std::size_t n, std::uint64_t seed);

/// One point per row, comma separated, with the weight as the last column.
void write_cloud_csv(std::ostream& os, const State& cloud);

}  // namespace logcon
