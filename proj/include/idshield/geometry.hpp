#pragma once

#include <array>

#include "idshield/rng.hpp"
#include "idshield/tensor.hpp"

namespace idshield {

struct Point {
    double x = 0.0;
    double y = 0.0;
};

/// Five facial landmarks in pixel coordinates, ordered: left eye, right eye,
/// nose tip, left mouth corner, right mouth corner.
struct LandmarkSet {
    std::array<Point, 5> points;
};

/// 2x3 row-major affine transform [a b tx; c d ty] mapping source coordinates
/// to target coordinates: (x, y) -> (a*x + b*y + tx, c*x + d*y + ty).
struct AffineMatrix {
    std::array<double, 6> m{1.0, 0.0, 0.0, 0.0, 1.0, 0.0};

    static AffineMatrix identity() { return AffineMatrix{}; }

    Point apply(Point p) const {
        return {m[0] * p.x + m[1] * p.y + m[2], m[3] * p.x + m[4] * p.y + m[5]};
    }

    double det() const { return m[0] * m[4] - m[1] * m[3]; }
};

LandmarkSet apply_affine(const AffineMatrix& a, const LandmarkSet& lm);

/// Target landmark positions in the aligned frame plus the corners of the
/// aligned crop square. Defaults are the standard 5-point 112x112 layout.
struct AlignmentTemplate {
    std::array<Point, 5> targets;
    std::array<Point, 4> crop_corners;
    int side = 112;

    static AlignmentTemplate standard_112();
};

/// Least-squares affine fit mapping src landmarks onto dst landmarks,
/// solved via the normal equations over the 6 affine parameters
/// (Gaussian elimination with partial pivoting).
/// Throws DegenerateLandmarks when the design matrix is rank-deficient
/// (e.g. all five source points collinear).
AffineMatrix fit_affine(const LandmarkSet& src, const LandmarkSet& dst);

/// Throws SingularTransform when |det| <= 1e-12.
AffineMatrix invert_affine(const AffineMatrix& a);

/// Resamples img under the affine map: output pixel (x, y) takes the bilinear
/// sample of img at a^-1 (x, y). Samples outside the source are zero. Pixel
/// centers sit at integer coordinates, matching the landmark convention.
Image warp_image(const Image& img, const AffineMatrix& a, int out_h, int out_w);

/// Exact adjoint of warp_image with respect to pixel values: scatters the
/// cotangent back through the bilinear weights. in_h/in_w/in_c describe the
/// source image the forward pass consumed.
Image warp_image_vjp(const Image& cotangent, const AffineMatrix& a, int in_h, int in_w,
                     int in_c);

/// Single-channel binary mask marking the pixels that alignment cropping will
/// preserve: the crop corners are pulled back through a^-1, clipped to the
/// image bounds, and the enclosed region is filled with 1. Pixel (x, y) is
/// tested at its center (x + 0.5, y + 0.5) with the even-odd rule.
Image face_prior_mask(const AffineMatrix& a, const AlignmentTemplate& tmpl, int h, int w);

/// Returns a + G with i.i.d. N(0, sigma^2) entries in all 6 slots.
AffineMatrix perturb_affine(const AffineMatrix& a, double sigma, Rng& rng);

}  // namespace idshield
