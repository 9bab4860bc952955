#pragma once

#include <boost/dynamic_bitset.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace visguard {

using VertexSet = boost::dynamic_bitset<std::uint64_t>;

inline std::vector<int> members(const VertexSet& s) {
    std::vector<int> out;
    for (auto i = s.find_first(); i != VertexSet::npos; i = s.find_next(i)) out.push_back(static_cast<int>(i));
    return out;
}

inline std::string to_string(const VertexSet& s) {
    std::string out = "{";
    for (auto i = s.find_first(); i != VertexSet::npos; i = s.find_next(i)) {
        if (out.size() > 1) out += ",";
        out += std::to_string(i);
    }
    return out + "}";
}

}  // namespace visguard
