#pragma once

#include "rackq/errors.hpp"

#include <compare>
#include <cstddef>
#include <string>
#include <vector>

namespace rackq {

// Permutation of {0..n-1}, stored as the image vector.
class Perm {
public:
    Perm() = default;

    explicit Perm(std::vector<int> images) : images_(std::move(images)) {
        std::vector<bool> seen(images_.size(), false);
        for (int v : images_) {
            if (v < 0 || static_cast<size_t>(v) >= images_.size() || seen[static_cast<size_t>(v)])
                throw ValidationError("image vector is not a permutation");
            seen[static_cast<size_t>(v)] = true;
        }
    }

    static Perm identity(int n) {
        Perm p;
        p.images_.resize(static_cast<size_t>(n));
        for (int i = 0; i < n; ++i) p.images_[static_cast<size_t>(i)] = i;
        return p;
    }

    int degree() const { return static_cast<int>(images_.size()); }
    int operator()(int i) const { return images_[static_cast<size_t>(i)]; }
    const std::vector<int>& images() const { return images_; }

    // function composition: (a.compose(b))(i) == a(b(i))
    Perm compose(const Perm& other) const {
        RACKQ_ASSERT(degree() == other.degree(), "composing permutations of different degree");
        Perm out;
        out.images_.resize(images_.size());
        for (size_t i = 0; i < images_.size(); ++i)
            out.images_[i] = images_[static_cast<size_t>(other.images_[i])];
        return out;
    }

    Perm inverse() const {
        Perm out;
        out.images_.resize(images_.size());
        for (size_t i = 0; i < images_.size(); ++i)
            out.images_[static_cast<size_t>(images_[i])] = static_cast<int>(i);
        return out;
    }

    Perm conjugated_by(const Perm& g) const { return g.compose(*this).compose(g.inverse()); }

    int order() const {
        Perm acc = *this;
        int ord = 1;
        while (!acc.is_identity()) {
            acc = acc.compose(*this);
            ++ord;
            RACKQ_ASSERT(ord <= 1 << 20, "permutation order runaway");
        }
        return ord;
    }

    bool is_identity() const {
        for (size_t i = 0; i < images_.size(); ++i)
            if (images_[i] != static_cast<int>(i)) return false;
        return true;
    }

    bool operator==(const Perm&) const = default;
    auto operator<=>(const Perm&) const = default;

    std::string cycle_string() const {
        std::string out;
        std::vector<bool> seen(images_.size(), false);
        for (size_t i = 0; i < images_.size(); ++i) {
            if (seen[i] || images_[i] == static_cast<int>(i)) continue;
            out += "(";
            size_t j = i;
            bool first = true;
            while (!seen[j]) {
                seen[j] = true;
                if (!first) out += " ";
                out += std::to_string(j);
                first = false;
                j = static_cast<size_t>(images_[j]);
            }
            out += ")";
        }
        if (out.empty()) out = "()";
        return out;
    }

private:
    std::vector<int> images_;
};

struct PermHash {
    size_t operator()(const Perm& p) const {
        size_t h = 1469598103934665603ull;
        for (int v : p.images()) {
            h ^= static_cast<size_t>(v) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        }
        return h;
    }
};

} // namespace rackq
