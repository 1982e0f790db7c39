#pragma once

#include "khoval/cube.hpp"
#include "khoval/diagram.hpp"
#include "khoval/numeric.hpp"

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

namespace khoval {

struct KhOptions {
    int max_crossings = 18; // hard cap on the cube size
    int threads = 0;        // 0 = available hardware parallelism
};

// Basis element of the cube complex: one state plus a label (1 or X) per
// circle. Bit i of `labels` set means circle i carries X. The q-degree is
// (#1-labels - #X-labels) + |state|.
struct Generator {
    std::uint32_t state = 0;
    std::uint32_t labels = 0;
    int q = 0;
};

// Dimensions of a bigraded homology (or of anything bigraded); only nonzero
// entries are stored.
struct HomologyTable {
    enum class Flavor { unnormalized, normalized };
    Flavor flavor = Flavor::unnormalized;
    int n_plus = 0, n_minus = 0; // recorded on normalized tables
    std::map<std::pair<int, int>, Dim> dims;

    Dim dim(int i, int j) const {
        auto it = dims.find({i, j});
        return it == dims.end() ? 0 : it->second;
    }
    Dim total() const {
        Dim t = 0;
        for (const auto& [key, v] : dims) t += v;
        return t;
    }
    bool operator==(const HomologyTable& o) const {
        return flavor == o.flavor && n_plus == o.n_plus && n_minus == o.n_minus && dims == o.dims;
    }
};

// Fully materialized complex; intended for small diagrams and structural
// checks (d^2 = 0, grading). Generators of each level are sorted by
// (state, labels); level i holds the differential into level i+1.
struct ChainComplex {
    struct Entry {
        Dim src = 0, dst = 0;
        int coeff = 0;
    };
    struct Level {
        std::vector<Generator> gens;
        std::vector<Entry> d;
    };
    int n = 0;
    int n_plus = 0, n_minus = 0;
    std::vector<Level> levels; // size n+1
};

ChainComplex build_complex(const Diagram& d, const KhOptions& opt = {});

// Unnormalized homology dimensions of an explicit complex, one exact rank
// computation per (i, j) block.
HomologyTable homology_dims(const ChainComplex& c, const KhOptions& opt = {});

// Reindex (i, j) -> (i - n_minus, j + n_plus - 2*n_minus).
HomologyTable normalize(const HomologyTable& t, int n_plus, int n_minus);

// Khovanov homology of a diagram. Equivalent to
// normalize(homology_dims(build_complex(d)), ...) but streams the cube one
// homological level at a time so only two levels are ever resident.
HomologyTable kh(const Diagram& d, const KhOptions& opt = {});
HomologyTable kh_unnormalized(const Diagram& d, const KhOptions& opt = {});

} // namespace khoval
