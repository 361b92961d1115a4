#pragma once

// graph6 reader/writer, header-less, bit-exact per the format specification.
// Supports N(n) in all three sizes: 0 <= n <= 62, 63 <= n <= 258047 and
// 258048 <= n <= 68719476735.

#include <string>

#include "errors.hpp"
#include "graph.hpp"

namespace geomforge {

inline std::string to_graph6(const Graph& g) {
    std::string s;
    long long n = g.n;
    if (n <= 62) {
        s.push_back(char(n + 63));
    } else if (n <= 258047) {
        s.push_back('~');
        s.push_back(char(((n >> 12) & 63) + 63));
        s.push_back(char(((n >> 6) & 63) + 63));
        s.push_back(char((n & 63) + 63));
    } else {
        s.push_back('~');
        s.push_back('~');
        for (int sh = 30; sh >= 0; sh -= 6) s.push_back(char(((n >> sh) & 63) + 63));
    }
    int bit = 0;
    int cur = 0;
    for (int v = 1; v < g.n; ++v)
        for (int u = 0; u < v; ++u) {
            cur = (cur << 1) | (g.has_edge(u, v) ? 1 : 0);
            if (++bit == 6) {
                s.push_back(char(cur + 63));
                bit = 0;
                cur = 0;
            }
        }
    if (bit) s.push_back(char((cur << (6 - bit)) + 63));
    return s;
}

inline Graph from_graph6(const std::string& s) {
    size_t pos = 0;
    auto need = [&](size_t k) {
        if (pos + k > s.size()) throw IoError("graph6: truncated input");
    };
    auto val = [&](size_t i) -> long long {
        int c = (unsigned char)s[i];
        if (c < 63 || c > 126) throw IoError("graph6: byte out of range");
        return c - 63;
    };
    need(1);
    long long n;
    if (s[pos] != '~') {
        n = val(pos);
        pos += 1;
    } else {
        need(2);
        if (s[pos + 1] != '~') {
            need(4);
            n = (val(pos + 1) << 12) | (val(pos + 2) << 6) | val(pos + 3);
            pos += 4;
        } else {
            need(8);
            n = 0;
            for (int i = 0; i < 6; ++i) n = (n << 6) | val(pos + 2 + i);
            pos += 8;
        }
    }
    if (n > 1000000) throw IoError("graph6: vertex count too large");
    Graph g((int)n);
    long long nbits = n * (n - 1) / 2;
    long long nbytes = (nbits + 5) / 6;
    need((size_t)nbytes);
    long long bitidx = 0;
    for (int v = 1; v < g.n; ++v)
        for (int u = 0; u < v; ++u, ++bitidx) {
            long long byte = bitidx / 6;
            int sh = 5 - (int)(bitidx % 6);
            if ((val(pos + byte) >> sh) & 1) g.add_edge(u, v);
        }
    pos += (size_t)nbytes;
    if (pos != s.size()) throw IoError("graph6: trailing bytes");
    return g;
}

} // namespace geomforge
