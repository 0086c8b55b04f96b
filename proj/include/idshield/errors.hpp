#pragma once

#include <stdexcept>
#include <string>

namespace idshield {

struct DegenerateLandmarks : std::runtime_error {
    explicit DegenerateLandmarks(const std::string& msg) : std::runtime_error(msg) {}
};

struct SingularTransform : std::runtime_error {
    explicit SingularTransform(const std::string& msg) : std::runtime_error(msg) {}
};

struct ShapeMismatch : std::runtime_error {
    explicit ShapeMismatch(const std::string& msg) : std::runtime_error(msg) {}
};

struct ZeroFeature : std::runtime_error {
    explicit ZeroFeature(const std::string& msg) : std::runtime_error(msg) {}
};

struct BranchMismatch : std::runtime_error {
    explicit BranchMismatch(const std::string& msg) : std::runtime_error(msg) {}
};

struct EmptyDataset : std::runtime_error {
    explicit EmptyDataset(const std::string& msg) : std::runtime_error(msg) {}
};

struct NonFiniteLoss : std::runtime_error {
    explicit NonFiniteLoss(const std::string& msg) : std::runtime_error(msg) {}
};

struct TooSmall : std::runtime_error {
    explicit TooSmall(const std::string& msg) : std::runtime_error(msg) {}
};

struct IoError : std::runtime_error {
    explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace idshield
