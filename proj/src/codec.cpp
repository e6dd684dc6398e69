#include "ppsim/codec.hpp"

#include <cmath>

namespace ppsim {

namespace {

std::array<Mat2, 4> make_encoding_table() {
    std::array<Mat2, 4> ops;
    ops[0] << 1, 0, 0, 1;    // 00
    ops[1] << 1, 0, 0, -1;   // 01
    ops[2] << 0, 1, 1, 0;    // 10
    ops[3] << 0, 1, -1, 0;   // 11
    return ops;
}

const std::array<Mat2, 4>& encoding_table() {
    static const std::array<Mat2, 4> table = make_encoding_table();
    return table;
}

}  // namespace

std::string to_string(const MessagePair& m) {
    return std::string(1, static_cast<char>('0' + m.i)) + static_cast<char>('0' + m.j);
}

int bit_distance(const MessagePair& a, const MessagePair& b) {
    return (a.i != b.i ? 1 : 0) + (a.j != b.j ? 1 : 0);
}

const Mat2& encoding_matrix(const MessagePair& m) { return encoding_table()[m.index()]; }

const Mat2& legacy_matrix(int j) { return encoding_table()[j & 1]; }

StateVector encode(const MessagePair& m, const StateVector& s) {
    return apply_on_travel(encoding_matrix(m), s);
}

DensityMatrix encode(const MessagePair& m, const DensityMatrix& s) {
    return apply_on_travel(encoding_matrix(m), s);
}

StateVector legacy_encode(int j, const StateVector& s) {
    return apply_on_travel(legacy_matrix(j), s);
}

DensityMatrix legacy_encode(int j, const DensityMatrix& s) {
    return apply_on_travel(legacy_matrix(j), s);
}

MessagePair decode(BellLabel label) {
    switch (label) {
        case BellLabel::PsiMinus: return {0, 0};
        case BellLabel::PsiPlus: return {0, 1};
        case BellLabel::PhiMinus: return {1, 0};
        case BellLabel::PhiPlus: return {1, 1};
    }
    return {0, 0};
}

std::array<MessagePair, 4> decode_table_for(BellLabel initial) {
    std::array<MessagePair, 4> table{};
    const StateVector start = bell_state(initial);
    for (int idx = 0; idx < 4; ++idx) {
        const MessagePair m = MessagePair::from_index(idx);
        const StateVector encoded = encode(m, start);
        // The encoded state is a Bell state up to phase; find which one.
        for (std::size_t k = 0; k < kBellOrder.size(); ++k) {
            const Vec4 v = bell_state(kBellOrder[k]).amps;
            if (std::norm(v.dot(encoded.amps)) > 0.5) {
                table[k] = m;
                break;
            }
        }
    }
    return table;
}

MessagePair decode_with(const std::array<MessagePair, 4>& table, BellLabel label) {
    for (std::size_t k = 0; k < kBellOrder.size(); ++k) {
        if (kBellOrder[k] == label) return table[k];
    }
    return {0, 0};
}

}  // namespace ppsim
