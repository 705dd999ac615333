#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace spadsp {

using Complex = std::complex<double>;

/// Fixed-length complex vector. Element access through at()/operator[] is
/// bounds-checked; span() gives unchecked access for inner loops.
class ComplexVector {
public:
    explicit ComplexVector(std::size_t length);
    explicit ComplexVector(std::vector<Complex> entries);
    ComplexVector(std::initializer_list<Complex> entries);

    std::size_t size() const noexcept { return entries_.size(); }

    Complex& at(std::size_t i);
    const Complex& at(std::size_t i) const;
    Complex& operator[](std::size_t i) { return at(i); }
    const Complex& operator[](std::size_t i) const { return at(i); }

    std::span<Complex> span() noexcept { return entries_; }
    std::span<const Complex> span() const noexcept { return entries_; }
    const std::vector<Complex>& entries() const noexcept { return entries_; }

    void fill(Complex value);
    bool all_finite() const noexcept;
    double squared_norm() const noexcept;
    std::size_t count_nonzero() const noexcept;

    friend bool operator==(const ComplexVector&, const ComplexVector&) = default;

private:
    std::vector<Complex> entries_;
};

/// Sorted set of distinct tap indices drawn from [0, capacity).
class SupportSet {
public:
    explicit SupportSet(std::size_t capacity);
    SupportSet(std::size_t capacity, std::vector<std::size_t> indices);

    static SupportSet full(std::size_t capacity);
    // {0, 1, ..., count-1}
    static SupportSet leading(std::size_t capacity, std::size_t count);

    std::size_t capacity() const noexcept { return capacity_; }
    std::size_t size() const noexcept { return indices_.size(); }
    bool empty() const noexcept { return indices_.empty(); }
    bool contains(std::size_t index) const noexcept;
    const std::vector<std::size_t>& indices() const noexcept { return indices_; }

    auto begin() const noexcept { return indices_.begin(); }
    auto end() const noexcept { return indices_.end(); }

    friend bool operator==(const SupportSet&, const SupportSet&) = default;

private:
    std::size_t capacity_;
    std::vector<std::size_t> indices_;
};

// Indices of the s largest-magnitude entries. Ties go to the smaller index.
SupportSet top_s_support(const ComplexVector& v, std::size_t s);

// Same selection, restricted to candidates in `within`.
SupportSet top_s_support(const ComplexVector& v, std::size_t s, const SupportSet& within);

SupportSet support_union(const SupportSet& a, const SupportSet& b);
SupportSet support_intersection(const SupportSet& a, const SupportSet& b);

// x(n, Λ): entries outside the set are zeroed.
ComplexVector apply_mask(const ComplexVector& x, const SupportSet& lambda_set);

// Keeps h on `keep`, zero elsewhere.
ComplexVector sparsify(const ComplexVector& h, const SupportSet& keep);

} // namespace spadsp
