#pragma once

#include <istream>
#include <stdexcept>
#include <string>
#include <vector>

#include "pipe/graph.hpp"

namespace ppe {

namespace detail {

inline std::string strip_g6_line(std::string s) {
    while (!s.empty() && (s.back() == '\n' || s.back() == '\r' || s.back() == ' ')) s.pop_back();
    const std::string header = ">>graph6<<";
    if (s.rfind(header, 0) == 0) s = s.substr(header.size());
    return s;
}

}  // namespace detail

/// Parse one graph6 line. Accepts the optional ">>graph6<<" header prefix.
/// Adjacency bits are the upper triangle in column order, six bits per byte,
/// most significant first, each byte offset by 63. Strict: rejects bad byte
/// ranges, truncated input, trailing bytes, and nonzero padding bits.
inline Graph parse_graph6(const std::string& line) {
    std::string s = detail::strip_g6_line(line);
    if (s.empty()) throw std::invalid_argument("graph6: empty line");
    size_t pos = 0;
    auto byte = [&](size_t i) -> int {
        int c = static_cast<unsigned char>(s[i]);
        if (c < 63 || c > 126)
            throw std::invalid_argument("graph6: byte out of range at position " + std::to_string(i));
        return c - 63;
    };
    long long n;
    if (s[0] == 126) {
        if (s.size() >= 2 && s[1] == 126)
            throw std::invalid_argument("graph6: 8-byte order form not supported");
        if (s.size() < 4) throw std::invalid_argument("graph6: truncated long-form order");
        n = (static_cast<long long>(byte(1)) << 12) | (byte(2) << 6) | byte(3);
        pos = 4;
    } else {
        n = byte(0);
        pos = 1;
    }
    long long bits = n * (n - 1) / 2;
    long long nbytes = (bits + 5) / 6;
    if (static_cast<long long>(s.size()) - static_cast<long long>(pos) < nbytes)
        throw std::invalid_argument("graph6: truncated adjacency bits");
    if (static_cast<long long>(s.size()) - static_cast<long long>(pos) > nbytes)
        throw std::invalid_argument("graph6: trailing bytes after adjacency bits");
    std::vector<std::pair<int, int>> edges;
    long long r = 0;
    int cur = 0, avail = 0;
    for (int j = 1; j < n; ++j)
        for (int i = 0; i < j; ++i, ++r) {
            if (avail == 0) {
                cur = byte(pos++);
                avail = 6;
            }
            if (cur & (1 << (avail - 1))) edges.emplace_back(i, j);
            --avail;
        }
    if (avail > 0 && (cur & ((1 << avail) - 1)) != 0)
        throw std::invalid_argument("graph6: nonzero padding bits");
    return build_graph(static_cast<int>(n), edges);
}

/// Inverse of parse_graph6; short form for n < 63, 4-byte form otherwise.
inline std::string write_graph6(const Graph& g) {
    std::string s;
    if (g.n < 63) {
        s.push_back(static_cast<char>(g.n + 63));
    } else {
        if (g.n > 258047) throw std::invalid_argument("graph6: order too large");
        s.push_back(126);
        s.push_back(static_cast<char>(((g.n >> 12) & 0x3f) + 63));
        s.push_back(static_cast<char>(((g.n >> 6) & 0x3f) + 63));
        s.push_back(static_cast<char>((g.n & 0x3f) + 63));
    }
    int acc = 0, nbits = 0;
    for (int j = 1; j < g.n; ++j)
        for (int i = 0; i < j; ++i) {
            acc = (acc << 1) | (g.has_edge(i, j) ? 1 : 0);
            if (++nbits == 6) {
                s.push_back(static_cast<char>(acc + 63));
                acc = 0;
                nbits = 0;
            }
        }
    if (nbits > 0) s.push_back(static_cast<char>((acc << (6 - nbits)) + 63));
    return s;
}

/// All graphs in a stream, one graph6 line each; blank lines and a leading
/// ">>graph6<<" header are skipped.
inline std::vector<Graph> read_graph6_stream(std::istream& in) {
    std::vector<Graph> gs;
    std::string line;
    while (std::getline(in, line)) {
        std::string s = detail::strip_g6_line(line);
        if (s.empty()) continue;
        gs.push_back(parse_graph6(s));
    }
    return gs;
}

}  // namespace ppe
