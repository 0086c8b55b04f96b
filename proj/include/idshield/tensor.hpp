#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "idshield/errors.hpp"

namespace idshield {

/// H x W x C raster of unit-interval intensities, interleaved channels,
/// row-major. The universal pixel container; doubles throughout so that
/// analytic gradients can be validated against finite differences.
struct Image {
    int h = 0;
    int w = 0;
    int c = 0;
    std::vector<double> px;

    Image() = default;
    Image(int h_, int w_, int c_, double fill = 0.0)
        : h(h_), w(w_), c(c_), px(static_cast<std::size_t>(h_) * w_ * c_, fill) {}

    double& at(int y, int x, int k) {
        return px[(static_cast<std::size_t>(y) * w + x) * c + k];
    }
    double at(int y, int x, int k) const {
        return px[(static_cast<std::size_t>(y) * w + x) * c + k];
    }

    std::size_t size() const { return px.size(); }
    bool same_shape(const Image& o) const { return h == o.h && w == o.w && c == o.c; }
};

inline Image zeros_like(const Image& img) { return Image(img.h, img.w, img.c); }

inline void require_same_shape(const Image& a, const Image& b, const char* what) {
    if (!a.same_shape(b)) {
        throw ShapeMismatch(std::string(what) + ": image shapes differ");
    }
}

/// Dense row-major matrix. Used for encoder weights and feature grids.
struct Mat {
    int rows = 0;
    int cols = 0;
    std::vector<double> a;

    Mat() = default;
    Mat(int r, int c, double fill = 0.0)
        : rows(r), cols(c), a(static_cast<std::size_t>(r) * c, fill) {}

    double& at(int i, int j) { return a[static_cast<std::size_t>(i) * cols + j]; }
    double at(int i, int j) const { return a[static_cast<std::size_t>(i) * cols + j]; }

    std::size_t size() const { return a.size(); }
};

/// Encoder output: a global embedding (rows == 1) or a patch grid
/// (rows == number of patches). Cosine similarity flattens either way.
struct Features {
    int rows = 0;
    int cols = 0;
    std::vector<double> v;

    Features() = default;
    Features(int r, int c) : rows(r), cols(c), v(static_cast<std::size_t>(r) * c, 0.0) {}

    std::size_t size() const { return v.size(); }
};

inline double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline double norm2(const std::vector<double>& a) { return std::sqrt(dot(a, a)); }

inline bool all_finite(const std::vector<double>& a) {
    for (double x : a) {
        if (!std::isfinite(x)) return false;
    }
    return true;
}

}  // namespace idshield
