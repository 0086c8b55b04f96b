#include "idshield/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace idshield {

namespace {

// Solves the 3x3 system M * x = rhs in place via Gaussian elimination with
// partial pivoting. Returns false when a pivot falls below the singularity
// threshold (1e-12, relative to the matrix scale).
bool solve3x3(double M[3][3], double rhs[3], double out[3]) {
    double scale = 1.0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) scale = std::max(scale, std::fabs(M[i][j]));
    const double tol = 1e-12 * scale;

    int perm[3] = {0, 1, 2};
    for (int col = 0; col < 3; ++col) {
        int pivot = col;
        for (int r = col + 1; r < 3; ++r) {
            if (std::fabs(M[perm[r]][col]) > std::fabs(M[perm[pivot]][col])) pivot = r;
        }
        std::swap(perm[col], perm[pivot]);
        const double p = M[perm[col]][col];
        if (std::fabs(p) <= tol) return false;
        for (int r = col + 1; r < 3; ++r) {
            const double f = M[perm[r]][col] / p;
            for (int j = col; j < 3; ++j) M[perm[r]][j] -= f * M[perm[col]][j];
            rhs[perm[r]] -= f * rhs[perm[col]];
        }
    }
    for (int col = 2; col >= 0; --col) {
        double s = rhs[perm[col]];
        for (int j = col + 1; j < 3; ++j) s -= M[perm[col]][j] * out[j];
        out[col] = s / M[perm[col]][col];
    }
    return true;
}

}  // namespace

LandmarkSet apply_affine(const AffineMatrix& a, const LandmarkSet& lm) {
    LandmarkSet out;
    for (int i = 0; i < 5; ++i) out.points[i] = a.apply(lm.points[i]);
    return out;
}

AlignmentTemplate AlignmentTemplate::standard_112() {
    // Standard ArcFace 5-point destination layout in the 112x112 frame.
    AlignmentTemplate t;
    t.targets = {Point{38.2946, 51.6963}, Point{73.5318, 51.5014}, Point{56.0252, 71.7366},
                 Point{41.5493, 92.3655}, Point{70.7299, 92.2041}};
    t.crop_corners = {Point{0.0, 0.0}, Point{112.0, 0.0}, Point{112.0, 112.0},
                      Point{0.0, 112.0}};
    t.side = 112;
    return t;
}

AffineMatrix fit_affine(const LandmarkSet& src, const LandmarkSet& dst) {
    for (const Point& p : src.points)
        if (!std::isfinite(p.x) || !std::isfinite(p.y))
            throw DegenerateLandmarks("fit_affine: non-finite source landmark");
    for (const Point& p : dst.points)
        if (!std::isfinite(p.x) || !std::isfinite(p.y))
            throw DegenerateLandmarks("fit_affine: non-finite target landmark");

    // The 6-parameter least-squares problem decouples into two 3x3 normal
    // systems sharing the same Gram matrix Sum [x^2 xy x; xy y^2 y; x y 1].
    double G[3][3] = {{0, 0, 0}, {0, 0, 0}, {0, 0, 0}};
    double bx[3] = {0, 0, 0};
    double by[3] = {0, 0, 0};
    for (int i = 0; i < 5; ++i) {
        const double x = src.points[i].x, y = src.points[i].y;
        const double u = dst.points[i].x, v = dst.points[i].y;
        G[0][0] += x * x;
        G[0][1] += x * y;
        G[0][2] += x;
        G[1][1] += y * y;
        G[1][2] += y;
        G[2][2] += 1.0;
        bx[0] += x * u;
        bx[1] += y * u;
        bx[2] += u;
        by[0] += x * v;
        by[1] += y * v;
        by[2] += v;
    }
    G[1][0] = G[0][1];
    G[2][0] = G[0][2];
    G[2][1] = G[1][2];

    double rowx[3], rowy[3];
    double Gx[3][3], Gy[3][3];
    std::copy(&G[0][0], &G[0][0] + 9, &Gx[0][0]);
    std::copy(&G[0][0], &G[0][0] + 9, &Gy[0][0]);
    if (!solve3x3(Gx, bx, rowx) || !solve3x3(Gy, by, rowy))
        throw DegenerateLandmarks("fit_affine: rank-deficient landmark configuration");

    AffineMatrix a;
    a.m = {rowx[0], rowx[1], rowx[2], rowy[0], rowy[1], rowy[2]};
    return a;
}

AffineMatrix invert_affine(const AffineMatrix& a) {
    const double det = a.det();
    if (!(std::fabs(det) > 1e-12))
        throw SingularTransform("invert_affine: |det| <= 1e-12");
    const double ia = a.m[4] / det;
    const double ib = -a.m[1] / det;
    const double ic = -a.m[3] / det;
    const double id = a.m[0] / det;
    AffineMatrix inv;
    inv.m = {ia, ib, -(ia * a.m[2] + ib * a.m[5]),
             ic, id, -(ic * a.m[2] + id * a.m[5])};
    return inv;
}

Image warp_image(const Image& img, const AffineMatrix& a, int out_h, int out_w) {
    if (img.size() == 0) throw ShapeMismatch("warp_image: empty input image");
    const AffineMatrix inv = invert_affine(a);
    Image out(out_h, out_w, img.c);
    for (int y = 0; y < out_h; ++y) {
        for (int x = 0; x < out_w; ++x) {
            const Point s = inv.apply({static_cast<double>(x), static_cast<double>(y)});
            const int x0 = static_cast<int>(std::floor(s.x));
            const int y0 = static_cast<int>(std::floor(s.y));
            const double fx = s.x - x0;
            const double fy = s.y - y0;
            const double w00 = (1.0 - fx) * (1.0 - fy);
            const double w10 = fx * (1.0 - fy);
            const double w01 = (1.0 - fx) * fy;
            const double w11 = fx * fy;
            for (int k = 0; k < img.c; ++k) {
                double v = 0.0;
                if (y0 >= 0 && y0 < img.h) {
                    if (x0 >= 0 && x0 < img.w) v += w00 * img.at(y0, x0, k);
                    if (x0 + 1 >= 0 && x0 + 1 < img.w) v += w10 * img.at(y0, x0 + 1, k);
                }
                if (y0 + 1 >= 0 && y0 + 1 < img.h) {
                    if (x0 >= 0 && x0 < img.w) v += w01 * img.at(y0 + 1, x0, k);
                    if (x0 + 1 >= 0 && x0 + 1 < img.w) v += w11 * img.at(y0 + 1, x0 + 1, k);
                }
                out.at(y, x, k) = v;
            }
        }
    }
    return out;
}

Image warp_image_vjp(const Image& cotangent, const AffineMatrix& a, int in_h, int in_w,
                     int in_c) {
    if (cotangent.c != in_c) throw ShapeMismatch("warp_image_vjp: channel count differs");
    const AffineMatrix inv = invert_affine(a);
    Image grad(in_h, in_w, in_c);
    for (int y = 0; y < cotangent.h; ++y) {
        for (int x = 0; x < cotangent.w; ++x) {
            const Point s = inv.apply({static_cast<double>(x), static_cast<double>(y)});
            const int x0 = static_cast<int>(std::floor(s.x));
            const int y0 = static_cast<int>(std::floor(s.y));
            const double fx = s.x - x0;
            const double fy = s.y - y0;
            const double w00 = (1.0 - fx) * (1.0 - fy);
            const double w10 = fx * (1.0 - fy);
            const double w01 = (1.0 - fx) * fy;
            const double w11 = fx * fy;
            for (int k = 0; k < in_c; ++k) {
                const double g = cotangent.at(y, x, k);
                if (g == 0.0) continue;
                if (y0 >= 0 && y0 < in_h) {
                    if (x0 >= 0 && x0 < in_w) grad.at(y0, x0, k) += w00 * g;
                    if (x0 + 1 >= 0 && x0 + 1 < in_w) grad.at(y0, x0 + 1, k) += w10 * g;
                }
                if (y0 + 1 >= 0 && y0 + 1 < in_h) {
                    if (x0 >= 0 && x0 < in_w) grad.at(y0 + 1, x0, k) += w01 * g;
                    if (x0 + 1 >= 0 && x0 + 1 < in_w) grad.at(y0 + 1, x0 + 1, k) += w11 * g;
                }
            }
        }
    }
    return grad;
}

Image face_prior_mask(const AffineMatrix& a, const AlignmentTemplate& tmpl, int h, int w) {
    const AffineMatrix inv = invert_affine(a);
    // Pull the crop corners back into the source frame, then clamp the
    // vertices to the image bounds before rasterizing.
    std::array<Point, 4> poly;
    for (int i = 0; i < 4; ++i) {
        Point o = inv.apply(tmpl.crop_corners[i]);
        o.x = std::clamp(o.x, 0.0, static_cast<double>(w));
        o.y = std::clamp(o.y, 0.0, static_cast<double>(h));
        poly[i] = o;
    }

    Image mask(h, w, 1);
    for (int y = 0; y < h; ++y) {
        const double py = y + 0.5;
        for (int x = 0; x < w; ++x) {
            const double px = x + 0.5;
            bool inside = false;
            for (int i = 0, j = 3; i < 4; j = i++) {
                const Point& v1 = poly[j];
                const Point& v2 = poly[i];
                if ((v1.y > py) != (v2.y > py)) {
                    const double xint = v1.x + (py - v1.y) / (v2.y - v1.y) * (v2.x - v1.x);
                    if (px < xint) inside = !inside;
                }
            }
            mask.at(y, x, 0) = inside ? 1.0 : 0.0;
        }
    }
    return mask;
}

AffineMatrix perturb_affine(const AffineMatrix& a, double sigma, Rng& rng) {
    if (sigma == 0.0) return a;
    AffineMatrix out = a;
    for (double& e : out.m) e += rng.normal(sigma);
    return out;
}

}  // namespace idshield
