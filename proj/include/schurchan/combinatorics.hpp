#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <ostream>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace schurchan {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// A weakly decreasing integer d-tuple labelling an irrep of U(d).
/// Entries may be negative; a partition is the case with all entries >= 0.
class Staircase {
public:
    Staircase() = default;
    explicit Staircase(std::vector<int> entries);
    Staircase(std::initializer_list<int> entries);

    /// The all-zero staircase over d rows.
    static Staircase empty(int d);
    /// (1,0,...,0) over d rows.
    static Staircase box(int d);

    int d() const { return static_cast<int>(e_.size()); }
    int operator[](int i) const { return e_[i]; }
    const std::vector<int>& entries() const { return e_; }

    int positive_boxes() const;  // sum of positive entries
    int negative_boxes() const;  // minus the sum of negative entries
    int size() const;            // sum of all entries
    int length() const;          // number of nonzero entries
    bool is_partition() const { return e_.empty() || e_.back() >= 0; }
    bool is_zero() const;

    Staircase dual() const;           // (-g_d, ..., -g_1)
    Staircase shifted(int k) const;   // adds k to every entry

    std::string str() const;

    friend auto operator<=>(const Staircase&, const Staircase&) = default;
    friend bool operator==(const Staircase&, const Staircase&) = default;

private:
    std::vector<int> e_;
};

std::ostream& operator<<(std::ostream& os, const Staircase& s);

/// Throws ValidationError unless s is weakly decreasing with d >= 1.
void validate(const Staircase& s);
/// Additionally checks that s is an (m,n)-staircase.
void validate(const Staircase& s, int m, int n);

/// All staircases obtained by adding one box, ordered by increasing row.
std::vector<Staircase> add_boxes(const Staircase& nu);
/// All staircases obtained by removing one box, ordered by increasing row.
std::vector<Staircase> remove_boxes(const Staircase& nu);
/// Row index at which `to` differs from `from` by one box (or -1).
int changed_row(const Staircase& from, const Staircase& to);

/// Number of standard Young tableaux of shape lambda (hook length formula).
std::uint64_t dim_perm_irrep(const Staircase& lambda);
/// Weyl dimension formula for the U(d) irrep with highest weight gamma.
std::uint64_t dim_gl_irrep(const Staircase& gamma);
/// Binomial(k+d-1, k).
std::uint64_t sym_dim(int k, int d);

/// Littlewood-Richardson coefficient c_{lambda,mu}^{gamma} with d-row truncation.
std::uint64_t lr_coeff(const Staircase& lambda, const Staircase& mu, const Staircase& gamma);

/// All (m,n)-staircases over d rows, lexicographically descending.
std::vector<Staircase> enumerate_staircases(int m, int n, int d);
/// Partitions of m with at most d rows, lexicographically descending.
std::vector<Staircase> partitions(int m, int d);

}  // namespace schurchan
