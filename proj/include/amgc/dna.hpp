#ifndef AMGC_DNA_HPP
#define AMGC_DNA_HPP

#include <array>
#include <cstdint>
#include <string>
#include <string_view>

namespace amgc::dna {

inline constexpr char kBases[4] = {'A', 'C', 'G', 'T'};

/// 0..3 for ACGT (either case), 4 for N/n, 0xFF for anything else.
inline constexpr std::array<std::uint8_t, 256> make_code_table() {
    std::array<std::uint8_t, 256> t{};
    for (auto& v : t) v = 0xFF;
    t['A'] = t['a'] = 0;
    t['C'] = t['c'] = 1;
    t['G'] = t['g'] = 2;
    t['T'] = t['t'] = 3;
    t['N'] = t['n'] = 4;
    return t;
}

inline constexpr std::array<std::uint8_t, 256> kCode = make_code_table();

inline constexpr std::array<char, 256> make_complement_table() {
    std::array<char, 256> t{};
    for (int i = 0; i < 256; ++i) t[static_cast<std::size_t>(i)] = static_cast<char>(i);
    t['A'] = 'T'; t['T'] = 'A'; t['C'] = 'G'; t['G'] = 'C'; t['N'] = 'N';
    return t;
}

inline constexpr std::array<char, 256> kComplement = make_complement_table();

inline std::uint8_t code(char base) { return kCode[static_cast<std::uint8_t>(base)]; }

inline bool is_acgt(char base) { return code(base) < 4; }
inline bool is_acgtn(char base) { return code(base) <= 4; }

inline char complement(char base) { return kComplement[static_cast<std::uint8_t>(base)]; }

inline std::string reverse_complement(std::string_view s) {
    std::string out(s.size(), 0);
    for (std::size_t i = 0; i < s.size(); ++i)
        out[s.size() - 1 - i] = complement(s[i]);
    return out;
}

}  // namespace amgc::dna

#endif
