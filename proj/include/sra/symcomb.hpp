#pragma once

#include <vector>

#include "sra/arith.hpp"

namespace sra {

// Young diagram given by weakly decreasing positive parts.
struct Partition {
    std::vector<long long> parts;

    Partition() = default;
    explicit Partition(std::vector<long long> p);

    long long size() const;  // N = sum of parts
    bool operator==(const Partition& o) const { return parts == o.parts; }
    bool operator<(const Partition& o) const { return parts < o.parts; }
    std::string to_string() const;
};

// Number of standard Young tableaux of shape mu (hook length formula).
Int dim_irrep(const Partition& mu);

// Sum over cells (row i, col j), 0-indexed, of (j - i).
long long content(const Partition& mu);

// Number of distinct part values; 1 iff mu is a rectangle.
long long num_corners(const Partition& mu);
bool is_rectangle(const Partition& mu);

// chi_mu(transposition) = dim(mu) * content(mu) / (N(N-1)/2); requires N >= 2.
Rational transposition_character(const Partition& mu);

// Symmetric group character by the Murnaghan-Nakayama recursion; the
// independent oracle for the identities above.
Int mn_character(const Partition& mu, const Partition& cycle_type);

std::vector<Partition> partitions_of(long long n);

}  // namespace sra
