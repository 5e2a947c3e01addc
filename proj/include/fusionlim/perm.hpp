#pragma once

#include <compare>
#include <cstdint>
#include <vector>

#include "fusionlim/errors.hpp"

namespace fusionlim {

constexpr int kMaxDegree = 32;

// Permutation of {0, ..., degree-1}, stored as the image array.
// Composition is right-to-left: (a * b)(x) = a(b(x)).
class Permutation {
public:
    Permutation() = default;

    explicit Permutation(std::vector<std::uint8_t> images) : img_(std::move(images)) {
        require(static_cast<int>(img_.size()) <= kMaxDegree, "InvalidPermutation",
                "degree exceeds " + std::to_string(kMaxDegree));
        std::vector<bool> seen(img_.size(), false);
        for (std::uint8_t v : img_) {
            require(v < img_.size() && !seen[v], "InvalidPermutation",
                    "image array is not a bijection");
            seen[v] = true;
        }
    }

    static Permutation identity(int degree) {
        std::vector<std::uint8_t> img(degree);
        for (int i = 0; i < degree; ++i) img[i] = static_cast<std::uint8_t>(i);
        return Permutation(std::move(img));
    }

    int degree() const { return static_cast<int>(img_.size()); }
    int operator()(int x) const { return img_[x]; }
    const std::vector<std::uint8_t>& images() const { return img_; }

    Permutation operator*(const Permutation& rhs) const {
        require(degree() == rhs.degree(), "InvalidPermutation", "degree mismatch in product");
        std::vector<std::uint8_t> img(img_.size());
        for (int x = 0; x < degree(); ++x) img[x] = img_[rhs.img_[x]];
        Permutation out;
        out.img_ = std::move(img);
        return out;
    }

    Permutation inverse() const {
        std::vector<std::uint8_t> img(img_.size());
        for (int x = 0; x < degree(); ++x) img[img_[x]] = static_cast<std::uint8_t>(x);
        Permutation out;
        out.img_ = std::move(img);
        return out;
    }

    bool is_identity() const {
        for (int x = 0; x < degree(); ++x)
            if (img_[x] != x) return false;
        return true;
    }

    int order() const {
        Permutation acc = *this;
        int n = 1;
        while (!acc.is_identity()) {
            acc = acc * *this;
            ++n;
        }
        return n;
    }

    auto operator<=>(const Permutation&) const = default;

private:
    std::vector<std::uint8_t> img_;
};

struct PermHash {
    std::size_t operator()(const Permutation& p) const {
        std::size_t h = 1469598103934665603ull;
        for (std::uint8_t v : p.images()) {
            h ^= v;
            h *= 1099511628211ull;
        }
        return h;
    }
};

} // namespace fusionlim
