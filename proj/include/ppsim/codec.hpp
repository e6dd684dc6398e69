#pragma once

#include <array>
#include <string>

#include "ppsim/qstate.hpp"

namespace ppsim {

// Two classical bits carried by one message run.
struct MessagePair {
    int i = 0;
    int j = 0;

    int index() const { return 2 * i + j; }
    static MessagePair from_index(int idx) { return {(idx >> 1) & 1, idx & 1}; }
    bool operator==(const MessagePair&) const = default;
};

std::string to_string(const MessagePair& m);

// Number of differing bits between two messages.
int bit_distance(const MessagePair& a, const MessagePair& b);

// Dense-coding unitary for message (i,j); the four matrices are the
// identity, the phase flip, the bit flip, and their product.
const Mat2& encoding_matrix(const MessagePair& m);

// Single-bit unitary of the original one-bit scheme: identity or phase flip.
const Mat2& legacy_matrix(int j);

StateVector encode(const MessagePair& m, const StateVector& s);
DensityMatrix encode(const MessagePair& m, const DensityMatrix& s);

StateVector legacy_encode(int j, const StateVector& s);
DensityMatrix legacy_encode(int j, const DensityMatrix& s);

// Inverse of the encode map for a session whose shared pair starts in
// the singlet: psi_minus->00, psi_plus->01, phi_minus->10, phi_plus->11.
MessagePair decode(BellLabel label);

// Decode table for an arbitrary initial Bell state, computed by applying
// each encoding to the initial state and reading off the resulting label.
std::array<MessagePair, 4> decode_table_for(BellLabel initial);

// Lookup into a decode_table_for result by measured label.
MessagePair decode_with(const std::array<MessagePair, 4>& table, BellLabel label);

}  // namespace ppsim
