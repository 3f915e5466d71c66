/*
 * Copyright 2026 The snowlab authors.
 * SPDX-License-Identifier: Apache-2.0
 */
#include "snowlab/cm/Countermeasures.h"

#include <algorithm>
#include <stdexcept>

namespace snowlab::cm {

using snowv::kAlphaA;
using snowv::kAlphaB;
using snowv::kAlphaInvA;
using snowv::kAlphaInvB;
using snowv::LfsrState;
using snowv::mulX;
using snowv::mulXInv;
using snowv::TapEvent;
using snowv::TapKind;
using snowv::TapObserver;
using snowv::Word16;

const char *toString(Variant v) {
    switch (v) {
    case Variant::Reference:
        return "reference";
    case Variant::ConstantTime:
        return "ct";
    case Variant::Masked:
        return "masked";
    case Variant::Shuffled:
        return "shuffled";
    }
    return "?";
}

Variant variantFromString(const std::string &name) {
    for (Variant v : {Variant::Reference, Variant::ConstantTime, Variant::Masked, Variant::Shuffled})
        if (name == toString(v))
            return v;
    throw std::invalid_argument("unknown variant: " + name);
}

Word16 mulXInvCounted(Word16 v, Word16 d, OpCount &ops) {
    ops.ands += 1; // the bit test
    if (v & 0x0001) {
        ops.shifts += 1;
        ops.xors += 1;
        return static_cast<Word16>((v >> 1) ^ d);
    }
    ops.shifts += 1;
    return static_cast<Word16>(v >> 1);
}

Word16 mulXInvCtCounted(Word16 v, Word16 d, OpCount &ops) {
    ops.ands += 1; // v & 1
    ops.negates += 1;
    Word16 mask = static_cast<Word16>(-static_cast<Word16>(v & 1));
    ops.ands += 1; // d & mask
    ops.shifts += 1;
    ops.xors += 1;
    return static_cast<Word16>((v >> 1) ^ (d & mask));
}

MaskStream MaskStream::fromEntropy() {
    std::random_device rd;
    std::uint64_t seed = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
    return MaskStream(seed);
}

Word16 MaskStream::next() {
    ++used;
    if (fromBuffer) {
        if (used > buffer.size())
            throw std::out_of_range("MaskStream: fixed mask buffer exhausted after " +
                                    std::to_string(buffer.size()) + " draws");
        return buffer[used - 1];
    }
    return static_cast<Word16>(engine());
}

ShuffleOrder ShuffleOrder::random(std::mt19937_64 &rng) {
    ShuffleOrder order;
    for (int j = 4; j >= 1; --j) {
        int k = static_cast<int>(rng() % static_cast<std::uint64_t>(j + 1));
        std::swap(order.head[j], order.head[k]);
    }
    return order;
}

std::vector<ShuffleOrder> ShuffleOrder::all() {
    std::vector<ShuffleOrder> orders;
    ShuffleOrder order;
    std::array<std::uint8_t, 5> perm = order.head;
    std::sort(perm.begin(), perm.end());
    do {
        order.head = perm;
        orders.push_back(order);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return orders;
}

void ShuffleOrder::validate() const {
    std::array<bool, 5> seen{};
    for (std::uint8_t h : head) {
        if (h >= 5)
            throw std::invalid_argument("ShuffleOrder: index out of range");
        if (seen[h])
            throw std::invalid_argument("ShuffleOrder: duplicate index");
        seen[h] = true;
    }
}

int ShuffleOrder::iterationAt(int slot) const {
    return slot < 5 ? head[static_cast<std::size_t>(slot)] : slot;
}

namespace {

// Shared shape of all variants: compute u_i and v_i from the pre-update
// cells, then assemble the shifted state.
LfsrState assemble(const LfsrState &state, const std::array<Word16, 8> &u,
                   const std::array<Word16, 8> &v) {
    LfsrState next;
    for (int i = 0; i < 8; ++i) {
        next.a[i] = state.a[i + 8];
        next.a[i + 8] = u[i];
        next.b[i] = state.b[i + 8];
        next.b[i + 8] = v[i];
    }
    return next;
}

} // namespace

LfsrState lfsrUpdateCt(const LfsrState &state, const TapObserver &observer, int round) {
    std::array<Word16, 8> u, v;
    for (int i = 0; i < 8; ++i) {
        u[i] = static_cast<Word16>(mulX(state.a[i], kAlphaA) ^ state.a[i + 1] ^
                                   mulXInvCt(state.a[i + 8], kAlphaInvA) ^ state.b[i]);
        if (observer)
            observer({round, i, i, TapKind::U, u[i]});
        v[i] = static_cast<Word16>(mulX(state.b[i], kAlphaB) ^ state.b[i + 3] ^
                                   mulXInvCt(state.b[i + 8], kAlphaInvB) ^ state.a[i]);
        if (observer)
            observer({round, i, i, TapKind::V, v[i]});
    }
    return assemble(state, u, v);
}

LfsrState lfsrUpdateMasked(const LfsrState &state, MaskStream &masks, const TapObserver &observer,
                           int round) {
    std::array<Word16, 8> u, v;
    for (int i = 0; i < 8; ++i) {
        Word16 r = masks.next();
        Word16 sharedA = static_cast<Word16>(state.a[i + 8] ^ r);
        if (observer)
            observer({round, i, i, TapKind::BranchA, static_cast<Word16>(sharedA & 1)});
        Word16 uShare0 = static_cast<Word16>(mulX(state.a[i], kAlphaA) ^ state.a[i + 1] ^
                                             mulXInv(sharedA, kAlphaInvA) ^ state.b[i]);
        Word16 uShare1 = mulXInv(r, kAlphaInvA);
        if (observer) {
            observer({round, i, i, TapKind::UShare0, uShare0});
            observer({round, i, i, TapKind::UShare1, uShare1});
        }
        u[i] = static_cast<Word16>(uShare0 ^ uShare1);

        Word16 sharedB = static_cast<Word16>(state.b[i + 8] ^ r);
        if (observer)
            observer({round, i, i, TapKind::BranchB, static_cast<Word16>(sharedB & 1)});
        Word16 vShare0 = static_cast<Word16>(mulX(state.b[i], kAlphaB) ^ state.b[i + 3] ^
                                             mulXInv(sharedB, kAlphaInvB) ^ state.a[i]);
        Word16 vShare1 = mulXInv(r, kAlphaInvB);
        if (observer) {
            observer({round, i, i, TapKind::VShare0, vShare0});
            observer({round, i, i, TapKind::VShare1, vShare1});
        }
        v[i] = static_cast<Word16>(vShare0 ^ vShare1);
    }
    return assemble(state, u, v);
}

LfsrState lfsrUpdateShuffled(const LfsrState &state, const ShuffleOrder &order,
                             const TapObserver &observer, int round) {
    order.validate();
    std::array<Word16, 8> u, v;
    for (int slot = 0; slot < 8; ++slot) {
        int i = order.iterationAt(slot);
        if (observer)
            observer({round, slot, i, TapKind::BranchA, static_cast<Word16>(state.a[i + 8] & 1)});
        u[i] = static_cast<Word16>(mulX(state.a[i], kAlphaA) ^ state.a[i + 1] ^
                                   mulXInv(state.a[i + 8], kAlphaInvA) ^ state.b[i]);
        if (observer)
            observer({round, slot, i, TapKind::U, u[i]});
        if (observer)
            observer({round, slot, i, TapKind::BranchB, static_cast<Word16>(state.b[i + 8] & 1)});
        v[i] = static_cast<Word16>(mulX(state.b[i], kAlphaB) ^ state.b[i + 3] ^
                                   mulXInv(state.b[i + 8], kAlphaInvB) ^ state.a[i]);
        if (observer)
            observer({round, slot, i, TapKind::V, v[i]});
    }
    return assemble(state, u, v);
}

} // namespace snowlab::cm
