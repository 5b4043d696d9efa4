#include "forestsos/edge_set.hpp"

#include <algorithm>
#include <iterator>

#include "forestsos/error.hpp"

namespace forestsos {

namespace {

void normalize(std::vector<EdgeId>& names) {
    std::sort(names.begin(), names.end());
    names.erase(std::unique(names.begin(), names.end()), names.end());
}

}  // namespace

EdgeSet::EdgeSet(std::initializer_list<EdgeId> names) : names_(names) { normalize(names_); }

EdgeSet::EdgeSet(std::vector<EdgeId> names) : names_(std::move(names)) { normalize(names_); }

bool EdgeSet::contains(const EdgeId& name) const {
    return std::binary_search(names_.begin(), names_.end(), name);
}

EdgeSet EdgeSet::with(const EdgeId& name) const {
    EdgeSet out;
    out.names_.reserve(names_.size() + 1);
    auto pos = std::lower_bound(names_.begin(), names_.end(), name);
    out.names_.assign(names_.begin(), pos);
    if (pos == names_.end() || *pos != name) out.names_.push_back(name);
    out.names_.insert(out.names_.end(), pos, names_.end());
    return out;
}

EdgeSet EdgeSet::without(const EdgeId& name) const {
    EdgeSet out;
    out.names_.reserve(names_.size());
    for (const auto& n : names_)
        if (n != name) out.names_.push_back(n);
    return out;
}

bool EdgeSet::is_subset_of(const EdgeSet& other) const {
    return std::includes(other.names_.begin(), other.names_.end(), names_.begin(), names_.end());
}

bool EdgeSet::intersects(const EdgeSet& other) const {
    auto a = names_.begin();
    auto b = other.names_.begin();
    while (a != names_.end() && b != other.names_.end()) {
        if (*a == *b) return true;
        if (*a < *b)
            ++a;
        else
            ++b;
    }
    return false;
}

EdgeSet operator|(const EdgeSet& a, const EdgeSet& b) {
    EdgeSet out;
    out.names_.reserve(a.size() + b.size());
    std::set_union(a.names_.begin(), a.names_.end(), b.names_.begin(), b.names_.end(),
                   std::back_inserter(out.names_));
    return out;
}

EdgeSet operator&(const EdgeSet& a, const EdgeSet& b) {
    EdgeSet out;
    std::set_intersection(a.names_.begin(), a.names_.end(), b.names_.begin(), b.names_.end(),
                          std::back_inserter(out.names_));
    return out;
}

EdgeSet operator-(const EdgeSet& a, const EdgeSet& b) {
    EdgeSet out;
    std::set_difference(a.names_.begin(), a.names_.end(), b.names_.begin(), b.names_.end(),
                        std::back_inserter(out.names_));
    return out;
}

EdgeSet operator^(const EdgeSet& a, const EdgeSet& b) {
    EdgeSet out;
    std::set_symmetric_difference(a.names_.begin(), a.names_.end(), b.names_.begin(),
                                  b.names_.end(), std::back_inserter(out.names_));
    return out;
}

std::strong_ordering operator<=>(const EdgeSet& a, const EdgeSet& b) {
    if (auto c = a.size() <=> b.size(); c != 0) return c;
    return a.names_ <=> b.names_;
}

std::string EdgeSet::to_string() const {
    std::string out = "{";
    for (std::size_t i = 0; i < names_.size(); ++i) {
        if (i) out += ',';
        out += names_[i];
    }
    out += '}';
    return out;
}

EdgeSet EdgeSet::parse(const std::string& text) {
    if (text.size() < 2 || text.front() != '{' || text.back() != '}')
        throw ParseError("edge set must look like {a,b}: '" + text + "'");
    std::vector<EdgeId> names;
    std::string body = text.substr(1, text.size() - 2);
    std::size_t start = 0;
    while (start <= body.size() && !body.empty()) {
        auto comma = body.find(',', start);
        auto item = body.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        if (!is_valid_edge_name(item)) throw ParseError("bad edge name '" + item + "' in " + text);
        names.push_back(item);
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    auto count = names.size();
    EdgeSet out(std::move(names));
    if (out.size() != count) throw ParseError("repeated edge in " + text);
    return out;
}

bool is_valid_edge_name(const std::string& name) {
    if (name.empty()) return false;
    return std::all_of(name.begin(), name.end(), [](char c) {
        return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
               c == '_' || c == '.';
    });
}

}  // namespace forestsos
