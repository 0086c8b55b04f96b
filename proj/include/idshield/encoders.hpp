#pragma once

#include <string>
#include <vector>

#include "idshield/geometry.hpp"
#include "idshield/tensor.hpp"

namespace idshield {

enum class OutputKind { GlobalUnitVector, PatchGrid };

/// Frozen surrogate feature extractor: patchify -> per-patch linear
/// projection -> tanh -> (mean-pool, mix, l2-normalize) for the global kind,
/// or per-patch mix without pooling/normalization for the patch-grid kind.
/// Weights are fixed at construction, seeded from the encoder name.
class SurrogateEncoder {
public:
    SurrogateEncoder() = default;
    SurrogateEncoder(const std::string& name, int patch_size, int in_channels,
                     int feature_dim, OutputKind kind);

    Features forward(const Image& img) const;

    /// Gradient of <forward(img), cotangent> with respect to img, assembled
    /// from the normalization Jacobian, tanh derivative, and transposed
    /// projections.
    Image vjp(const Image& img, const Features& cotangent) const;

    const std::string& name() const { return name_; }
    int patch_size() const { return patch_size_; }
    int in_channels() const { return in_channels_; }
    int feature_dim() const { return feature_dim_; }
    OutputKind output_kind() const { return kind_; }
    const Mat& patch_proj() const { return patch_proj_; }
    const Mat& mix() const { return mix_; }

    void save(const std::string& path) const;
    static SurrogateEncoder load(const std::string& path);

private:
    std::string name_;
    int patch_size_ = 0;
    int in_channels_ = 0;
    int feature_dim_ = 0;
    OutputKind kind_ = OutputKind::GlobalUnitVector;
    Mat patch_proj_;  // feature_dim x (patch^2 * channels)
    Mat mix_;         // feature_dim x feature_dim

    // Shared forward internals; fills per-patch activations z (N x feat).
    Mat activations(const Image& img) const;

    friend struct EncoderSerde;
};

enum class PreprocessStep { AlignFace, CenterCropResize };

/// Everything the backward pass needs to replay a preprocessing chain:
/// each step collapses to one affine warp, and warps are linear in pixel
/// values, so (affine, dims) plus the final encoder input suffice.
struct PreprocessTrace {
    std::vector<AffineMatrix> affines;
    std::vector<int> in_h, in_w;
    std::vector<int> out_h, out_w;
    Image encoder_input;
};

/// One victim pipeline surrogate: a preprocessing chain, a frozen encoder,
/// and its loss weight.
struct EncoderBranch {
    std::string name;
    std::vector<PreprocessStep> chain;
    AlignmentTemplate tmpl;  // used by AlignFace steps
    int crop_side = 224;     // used by CenterCropResize steps
    SurrogateEncoder encoder;
    double weight = 0.0;
};

/// Applies the branch preprocessing chain (affine fit -> optional jitter ->
/// warp, or center-crop/resize) followed by the encoder forward pass. The
/// trace records the exact affines used so the backward pass reuses them.
std::pair<Features, PreprocessTrace> branch_features(const EncoderBranch& branch,
                                                     const Image& img,
                                                     const LandmarkSet& landmarks,
                                                     double jitter_sigma, Rng& rng);

/// Pulls a feature-space cotangent back to an input-image gradient through
/// the recorded preprocessing chain.
Image branch_vjp(const EncoderBranch& branch, const PreprocessTrace& trace,
                 const Features& cotangent);

/// Affine collapsing resize-shorter-side-to-`side` followed by a centered
/// side x side crop (CLIP-style preprocessing).
AffineMatrix center_crop_resize_affine(int h, int w, int side);

/// The four default branches: cropped-global, cropped-patch x2, and
/// aligned-global, in the curriculum weight order alpha_1..alpha_4.
std::vector<EncoderBranch> default_branches();

}  // namespace idshield
