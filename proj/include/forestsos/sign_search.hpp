#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "forestsos/certificate.hpp"

namespace forestsos {

enum class SearchStatus { kFound, kExhausted, kBudget };

std::string to_string(SearchStatus s);

template <class Cert>
struct SearchResult {
    SearchStatus status = SearchStatus::kExhausted;
    std::optional<Cert> cert;
    /// Sign assignments tried.
    std::uint64_t nodes = 0;
    /// Free signs after fixing the first cycle of every outer set.
    std::size_t free_signs = 0;
};

struct SearchOptions {
    /// Maximum number of sign assignments; 0 means unlimited.
    std::uint64_t budget = 10'000'000;
};

/// Depth-first search over the signs of (outer set, cycle) pairs in
/// canonical order, +1 before -1, with the first cycle of each outer set
/// fixed to +1. Partial assignments are cut as soon as some monomial has
/// received all the cross terms that can reach it and its coefficient is
/// wrong. The returned certificate has passed verify_delta.
SearchResult<DeltaCert> sign_search_delta(const MultiGraph& g, const EdgeId& e, const EdgeId& f,
                                          const SearchOptions& opts = {});
SearchResult<PhiCert> sign_search_phi(const MultiGraph& g, const EdgeId& e, const SearchOptions& opts = {});

}  // namespace forestsos
