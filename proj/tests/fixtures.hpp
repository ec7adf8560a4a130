#pragma once

// Shared p = 23, x_s = 7 desk fixture. The injected one-way function pins
// t = h(T xor PW) to 3 for the worked login values.

#include "scra/schemes.hpp"

namespace fixture {

using scra::Int;

inline scra::ServerSecret secret_xs7() {
  scra::ServerSecret s;
  s.shadow_key.assign(32, 0xAA);
  s.checkdigit_key.assign(32, 0xBB);
  s.x_s = 7;
  return s;
}

constexpr long kT = 1000;

// t = 3 for pw in {17, 1} at timestamp kT.
inline scra::OwfHandle owf_t3() {
  scra::OwfHandle::Table table;
  for (Int pw : {Int(17), Int(1)})
    table[scra::to_bytes_be(scra::xor_align(Int(kT), pw), 8)] = {0x03};
  return scra::OwfHandle::injected(std::move(table));
}

inline scra::SystemParams p23_injected(
    scra::FidelityMode mode = scra::FidelityMode::Hardened) {
  scra::SystemParams params(scra::Prime(Int(23)), secret_xs7(), owf_t3());
  params.mode = mode;
  return params;
}

inline scra::SystemParams p23_standard(
    scra::FidelityMode mode = scra::FidelityMode::Hardened) {
  scra::SystemParams params(scra::Prime(Int(23)), secret_xs7(), scra::OwfHandle::standard());
  params.mode = mode;
  return params;
}

}  // namespace fixture
