#include "spadsp/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "spadsp/error.hpp"

namespace spadsp {

ComplexVector::ComplexVector(std::size_t length) : entries_(length) {
    if (length == 0) throw ParameterError("ComplexVector: length must be positive");
}

ComplexVector::ComplexVector(std::vector<Complex> entries) : entries_(std::move(entries)) {
    if (entries_.empty()) throw ParameterError("ComplexVector: length must be positive");
}

ComplexVector::ComplexVector(std::initializer_list<Complex> entries)
    : ComplexVector(std::vector<Complex>(entries)) {}

Complex& ComplexVector::at(std::size_t i) {
    if (i >= entries_.size()) {
        throw ParameterError("ComplexVector: index " + std::to_string(i) + " out of range " +
                             std::to_string(entries_.size()));
    }
    return entries_[i];
}

const Complex& ComplexVector::at(std::size_t i) const {
    return const_cast<ComplexVector*>(this)->at(i);
}

void ComplexVector::fill(Complex value) { std::fill(entries_.begin(), entries_.end(), value); }

bool ComplexVector::all_finite() const noexcept {
    return std::all_of(entries_.begin(), entries_.end(), [](const Complex& c) {
        return std::isfinite(c.real()) && std::isfinite(c.imag());
    });
}

double ComplexVector::squared_norm() const noexcept {
    double acc = 0.0;
    for (const auto& c : entries_) acc += std::norm(c);
    return acc;
}

std::size_t ComplexVector::count_nonzero() const noexcept {
    return static_cast<std::size_t>(
        std::count_if(entries_.begin(), entries_.end(), [](const Complex& c) { return c != Complex{}; }));
}

SupportSet::SupportSet(std::size_t capacity) : capacity_(capacity) {}

SupportSet::SupportSet(std::size_t capacity, std::vector<std::size_t> indices)
    : capacity_(capacity), indices_(std::move(indices)) {
    std::sort(indices_.begin(), indices_.end());
    if (std::adjacent_find(indices_.begin(), indices_.end()) != indices_.end()) {
        throw ParameterError("SupportSet: duplicate index");
    }
    if (!indices_.empty() && indices_.back() >= capacity_) {
        throw ParameterError("SupportSet: index " + std::to_string(indices_.back()) +
                             " exceeds capacity " + std::to_string(capacity_));
    }
}

SupportSet SupportSet::full(std::size_t capacity) { return leading(capacity, capacity); }

SupportSet SupportSet::leading(std::size_t capacity, std::size_t count) {
    if (count > capacity) throw ParameterError("SupportSet: count exceeds capacity");
    std::vector<std::size_t> idx(count);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    return SupportSet(capacity, std::move(idx));
}

bool SupportSet::contains(std::size_t index) const noexcept {
    return std::binary_search(indices_.begin(), indices_.end(), index);
}

namespace {

SupportSet select_largest(std::span<const Complex> v, std::size_t s, std::vector<std::size_t> candidates) {
    if (s == 0 || s > candidates.size()) {
        throw ParameterError("top_s_support: s=" + std::to_string(s) + " outside [1, " +
                             std::to_string(candidates.size()) + "]");
    }
    std::vector<double> mag(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) mag[i] = std::norm(v[i]);
    // strict total order: larger magnitude first, then smaller index
    const auto before = [&mag](std::size_t a, std::size_t b) {
        return mag[a] > mag[b] || (mag[a] == mag[b] && a < b);
    };
    std::partial_sort(candidates.begin(), candidates.begin() + static_cast<std::ptrdiff_t>(s),
                      candidates.end(), before);
    candidates.resize(s);
    return SupportSet(v.size(), std::move(candidates));
}

void require_same_capacity(const SupportSet& a, const SupportSet& b, const char* op) {
    if (a.capacity() != b.capacity()) {
        throw ParameterError(std::string(op) + ": capacity mismatch " + std::to_string(a.capacity()) +
                             " vs " + std::to_string(b.capacity()));
    }
}

void require_matching(const ComplexVector& x, const SupportSet& set, const char* op) {
    if (set.capacity() != x.size()) {
        throw ParameterError(std::string(op) + ": support capacity " + std::to_string(set.capacity()) +
                             " != vector length " + std::to_string(x.size()));
    }
}

} // namespace

SupportSet top_s_support(const ComplexVector& v, std::size_t s) {
    std::vector<std::size_t> all(v.size());
    std::iota(all.begin(), all.end(), std::size_t{0});
    return select_largest(v.span(), s, std::move(all));
}

SupportSet top_s_support(const ComplexVector& v, std::size_t s, const SupportSet& within) {
    require_matching(v, within, "top_s_support");
    return select_largest(v.span(), s, within.indices());
}

SupportSet support_union(const SupportSet& a, const SupportSet& b) {
    require_same_capacity(a, b, "support_union");
    std::vector<std::size_t> out;
    out.reserve(a.size() + b.size());
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return SupportSet(a.capacity(), std::move(out));
}

SupportSet support_intersection(const SupportSet& a, const SupportSet& b) {
    require_same_capacity(a, b, "support_intersection");
    std::vector<std::size_t> out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return SupportSet(a.capacity(), std::move(out));
}

ComplexVector apply_mask(const ComplexVector& x, const SupportSet& lambda_set) {
    require_matching(x, lambda_set, "apply_mask");
    ComplexVector out(x.size());
    auto dst = out.span();
    auto src = x.span();
    for (std::size_t i : lambda_set) dst[i] = src[i];
    return out;
}

ComplexVector sparsify(const ComplexVector& h, const SupportSet& keep) {
    require_matching(h, keep, "sparsify");
    if (keep.size() == h.size()) return h;
    return apply_mask(h, keep);
}

} // namespace spadsp
