#pragma once

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <string>

namespace qwit {

inline constexpr const char* artifact_version = "qwit/1";

using cplx = std::complex<double>;
using Mat2 = Eigen::Matrix2cd;
using Mat4 = Eigen::Matrix4cd;
using Mat16 = Eigen::Matrix<cplx, 16, 16>;
using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;
using Vec4c = Eigen::Vector4cd;

// Error taxonomy. Each class maps to one CLI exit status; invalid arguments
// use std::invalid_argument directly.
struct parse_error : std::runtime_error {
    explicit parse_error(const std::string& what) : std::runtime_error(what) {}
};

struct not_a_state_error : std::runtime_error {
    not_a_state_error(const std::string& what, double offending)
        : std::runtime_error(what), offending_value(offending) {}
    double offending_value;
};

struct insufficient_data_error : std::runtime_error {
    explicit insufficient_data_error(const std::string& what) : std::runtime_error(what) {}
};

struct degenerate_calibration_error : std::invalid_argument {
    explicit degenerate_calibration_error(const std::string& what)
        : std::invalid_argument(what) {}
};

struct optimizer_error : std::runtime_error {
    optimizer_error(const std::string& what, double best)
        : std::runtime_error(what), best_value(best) {}
    double best_value;
};

}  // namespace qwit
