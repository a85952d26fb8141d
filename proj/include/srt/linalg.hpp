#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>

namespace srt {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// Error taxonomy shared across the toolkit.
struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ShapeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct CapabilityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Dense rank-3 array with uniform extent n, stored flat.
class Tensor3 {
  public:
    Tensor3() : n_(0) {}
    explicit Tensor3(int n) : n_(n), data_(Vec::Zero(static_cast<long>(n) * n * n)) {}

    double& operator()(int i, int j, int k) { return data_[(static_cast<long>(i) * n_ + j) * n_ + k]; }
    double operator()(int i, int j, int k) const { return data_[(static_cast<long>(i) * n_ + j) * n_ + k]; }

    int extent() const { return n_; }
    double max_abs() const { return data_.size() ? data_.cwiseAbs().maxCoeff() : 0.0; }
    const Vec& flat() const { return data_; }
    Vec& flat() { return data_; }

  private:
    int n_;
    Vec data_;
};

/// Dense rank-4 array with uniform extent n.
class Tensor4 {
  public:
    Tensor4() : n_(0) {}
    explicit Tensor4(int n) : n_(n), data_(Vec::Zero(static_cast<long>(n) * n * n * n)) {}

    double& operator()(int i, int j, int k, int l) {
        return data_[((static_cast<long>(i) * n_ + j) * n_ + k) * n_ + l];
    }
    double operator()(int i, int j, int k, int l) const {
        return data_[((static_cast<long>(i) * n_ + j) * n_ + k) * n_ + l];
    }

    int extent() const { return n_; }
    double max_abs() const { return data_.size() ? data_.cwiseAbs().maxCoeff() : 0.0; }

  private:
    int n_;
    Vec data_;
};

inline Mat antisymmetrize(const Mat& a) { return 0.5 * (a - a.transpose()); }

inline double max_abs(const Mat& a) { return a.size() ? a.cwiseAbs().maxCoeff() : 0.0; }
inline double max_abs(const Vec& a) { return a.size() ? a.cwiseAbs().maxCoeff() : 0.0; }

inline void require_dim(const Vec& v, int n, const char* what) {
    if (v.size() != n) {
        throw ShapeError(std::string(what) + ": expected dimension " + std::to_string(n) + ", got " +
                         std::to_string(v.size()));
    }
}

}  // namespace srt
