#include "kdesample/synthgen.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "kdesample/errors.hpp"

namespace kdesample {

namespace {

Dataset assemble(Eigen::MatrixXd majority, Eigen::MatrixXd minority,
                 std::vector<std::string> names) {
    Eigen::MatrixXd feat(majority.rows() + minority.rows(), majority.cols());
    feat.topRows(majority.rows()) = majority;
    feat.bottomRows(minority.rows()) = minority;
    std::vector<Label> labels(static_cast<std::size_t>(feat.rows()), Label::negative);
    for (Eigen::Index i = majority.rows(); i < feat.rows(); ++i) {
        labels[static_cast<std::size_t>(i)] = Label::positive;
    }
    return Dataset(std::move(feat), std::move(labels), std::move(names), "minority",
                   "majority");
}

}  // namespace

Dataset gen_donut(const DonutSpec& spec) {
    if (!(spec.minority_fraction > 0.0 && spec.minority_fraction < 0.5)) {
        throw ArgumentError("gen donut: minority_fraction must be in (0, 0.5)");
    }
    if (!(spec.hole_radius < spec.side / 2.0) || spec.hole_radius < 0.0) {
        throw ArgumentError("gen donut: hole_radius must be in [0, side/2)");
    }
    if (!(spec.minority_sigma > 0.0)) {
        throw ArgumentError("gen donut: minority_sigma must be > 0");
    }
    // Hole fully inside the square, so the acceptance rate is exact.
    const double acceptance =
        1.0 - std::numbers::pi * spec.hole_radius * spec.hole_radius /
                  (spec.side * spec.side);
    if (acceptance < 0.01) {
        throw GeneratorError("gen donut: rejection acceptance below 1%");
    }

    const auto n_minority = static_cast<std::size_t>(
        std::llround(static_cast<double>(spec.n_total) * spec.minority_fraction));
    const std::size_t n_majority = spec.n_total - n_minority;
    const double cx = spec.side / 2.0;
    const double cy = spec.side / 2.0;

    RngStream rng(spec.seed, "gen_donut");
    Eigen::MatrixXd majority(static_cast<Eigen::Index>(n_majority), 2);
    for (std::size_t i = 0; i < n_majority; ++i) {
        double x, y;
        do {
            x = spec.side * rng.uniform01();
            y = spec.side * rng.uniform01();
        } while (std::hypot(x - cx, y - cy) < spec.hole_radius);
        majority(static_cast<Eigen::Index>(i), 0) = x;
        majority(static_cast<Eigen::Index>(i), 1) = y;
    }
    Eigen::MatrixXd minority(static_cast<Eigen::Index>(n_minority), 2);
    for (std::size_t i = 0; i < n_minority; ++i) {
        minority(static_cast<Eigen::Index>(i), 0) = cx + spec.minority_sigma * rng.normal();
        minority(static_cast<Eigen::Index>(i), 1) = cy + spec.minority_sigma * rng.normal();
    }
    return assemble(std::move(majority), std::move(minority), {"x", "y"});
}

Dataset gen_cube(const CubeSpec& spec) {
    if (!(spec.void_radius < spec.side / 2.0) || spec.void_radius < 0.0) {
        throw ArgumentError("gen cube: void_radius must be in [0, side/2)");
    }
    if (!(spec.sigma > 0.0)) throw ArgumentError("gen cube: sigma must be > 0");
    const double volume = spec.side * spec.side * spec.side;
    const double void_volume =
        4.0 / 3.0 * std::numbers::pi * std::pow(spec.void_radius, 3);
    if (1.0 - void_volume / volume < 0.01) {
        throw GeneratorError("gen cube: rejection acceptance below 1%");
    }

    const Eigen::Vector3d center(spec.side / 2.0, spec.side / 2.0, spec.side / 2.0);
    RngStream rng(spec.seed, "gen_cube");

    Eigen::MatrixXd majority(static_cast<Eigen::Index>(spec.n_majority), 3);
    for (std::size_t i = 0; i < spec.n_majority; ++i) {
        Eigen::Vector3d p;
        do {
            p = Eigen::Vector3d(spec.side * rng.uniform01(), spec.side * rng.uniform01(),
                                spec.side * rng.uniform01());
        } while ((p - center).norm() < spec.void_radius);
        majority.row(static_cast<Eigen::Index>(i)) = p.transpose();
    }
    Eigen::MatrixXd minority(static_cast<Eigen::Index>(spec.n_minority), 3);
    for (std::size_t i = 0; i < spec.n_minority; ++i) {
        for (Eigen::Index j = 0; j < 3; ++j) {
            minority(static_cast<Eigen::Index>(i), j) = spec.mu(j) + spec.sigma * rng.normal();
        }
    }
    return assemble(std::move(majority), std::move(minority), {"x", "y", "z"});
}

Dataset gen_separable(const SeparableSpec& spec) {
    if (spec.overlap_margin < 0.0) {
        throw ArgumentError("gen separable: overlap_margin must be >= 0");
    }
    RngStream rng(spec.seed, "gen_separable");

    // Majority below the diagonal (widened upward by the margin), minority
    // above it (widened downward).
    Eigen::MatrixXd majority(static_cast<Eigen::Index>(spec.n_majority), 2);
    for (std::size_t i = 0; i < spec.n_majority; ++i) {
        double x, y;
        do {
            x = rng.uniform01();
            y = rng.uniform01();
        } while (y > x + spec.overlap_margin);
        majority(static_cast<Eigen::Index>(i), 0) = x;
        majority(static_cast<Eigen::Index>(i), 1) = y;
    }
    Eigen::MatrixXd minority(static_cast<Eigen::Index>(spec.n_minority), 2);
    for (std::size_t i = 0; i < spec.n_minority; ++i) {
        double x, y;
        do {
            x = rng.uniform01();
            y = rng.uniform01();
        } while (y < x - spec.overlap_margin);
        minority(static_cast<Eigen::Index>(i), 0) = x;
        minority(static_cast<Eigen::Index>(i), 1) = y;
    }
    return assemble(std::move(majority), std::move(minority), {"x", "y"});
}

}  // namespace kdesample
