#pragma once

#include <memalg/machine.hpp>
#include <memalg/memprogram.hpp>
#include <memalg/turing.hpp>

namespace memalg {

/// Machine whose realizable set is exactly the permutations of the state set,
/// in lexicographic table order. Throws EnumerationTooLarge when |S|! exceeds cap.
Machine full_bijection_machine(const StateSet & states, std::uint64_t cap = default_enumeration_cap);

} // namespace memalg
