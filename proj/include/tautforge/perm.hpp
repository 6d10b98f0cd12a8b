#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace tautforge {

// Permutation of {0,1,2,3}, used as the vertex map of a face gluing.
struct Perm4 {
    std::array<uint8_t, 4> img{0, 1, 2, 3};

    Perm4() = default;
    Perm4(uint8_t a, uint8_t b, uint8_t c, uint8_t d) : img{a, b, c, d} {}

    uint8_t operator[](int i) const { return img[static_cast<size_t>(i)]; }

    bool operator==(const Perm4& o) const { return img == o.img; }

    static Perm4 identity() { return Perm4(); }

    Perm4 inverse() const {
        Perm4 r;
        for (int i = 0; i < 4; ++i) r.img[img[static_cast<size_t>(i)]] = static_cast<uint8_t>(i);
        return r;
    }

    // (a.then(b))[i] == b[a[i]]
    Perm4 then(const Perm4& b) const {
        Perm4 r;
        for (int i = 0; i < 4; ++i) r.img[static_cast<size_t>(i)] = b.img[img[static_cast<size_t>(i)]];
        return r;
    }

    bool is_identity() const { return *this == Perm4(); }

    // false for even permutations, true for odd.
    bool odd() const {
        int inv = 0;
        for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j)
                if (img[static_cast<size_t>(i)] > img[static_cast<size_t>(j)]) ++inv;
        return (inv & 1) != 0;
    }

    std::string str() const {
        std::string s(4, '0');
        for (int i = 0; i < 4; ++i) s[static_cast<size_t>(i)] = static_cast<char>('0' + img[static_cast<size_t>(i)]);
        return s;
    }

    // Parses a 4-character digit string, e.g. "2103". Throws on anything
    // that is not a bijection of {0,1,2,3}.
    static Perm4 parse(const std::string& s) {
        if (s.size() != 4) throw std::invalid_argument("permutation must have 4 symbols: '" + s + "'");
        Perm4 p;
        std::array<bool, 4> seen{false, false, false, false};
        for (int i = 0; i < 4; ++i) {
            char c = s[static_cast<size_t>(i)];
            if (c < '0' || c > '3') throw std::invalid_argument("permutation symbol out of range: '" + s + "'");
            int v = c - '0';
            if (seen[static_cast<size_t>(v)]) throw std::invalid_argument("not a permutation: '" + s + "'");
            seen[static_cast<size_t>(v)] = true;
            p.img[static_cast<size_t>(i)] = static_cast<uint8_t>(v);
        }
        return p;
    }
};

// Permutation of {0,1,2} for surface triangulations.
struct Perm3 {
    std::array<uint8_t, 3> img{0, 1, 2};

    Perm3() = default;
    Perm3(uint8_t a, uint8_t b, uint8_t c) : img{a, b, c} {}

    uint8_t operator[](int i) const { return img[static_cast<size_t>(i)]; }
    bool operator==(const Perm3& o) const { return img == o.img; }

    Perm3 inverse() const {
        Perm3 r;
        for (int i = 0; i < 3; ++i) r.img[img[static_cast<size_t>(i)]] = static_cast<uint8_t>(i);
        return r;
    }

    Perm3 then(const Perm3& b) const {
        Perm3 r;
        for (int i = 0; i < 3; ++i) r.img[static_cast<size_t>(i)] = b.img[img[static_cast<size_t>(i)]];
        return r;
    }
};

}  // namespace tautforge
