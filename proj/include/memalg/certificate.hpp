#pragma once

#include <memalg/isomorphism.hpp>
#include <memalg/machine.hpp>
#include <memalg/reductions.hpp>

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace memalg {

/// Self-contained key/value record of a command's inputs and result.
///
///     memalg certificate
///     kind: iso
///     result: yes
///     g: s0 -> t1
///     begin a
///     ...verbatim text...
///     end a
///
/// Keys may repeat; their order is preserved. Blocks embed input documents
/// (machines, TM and memprogram descriptions) and recorded outputs.
struct Certificate {
    std::string kind;
    std::vector<std::pair<std::string, std::string>> fields;
    std::vector<std::pair<std::string, std::string>> blocks;

    void add(std::string key, std::string value) { fields.emplace_back(std::move(key), std::move(value)); }
    void add_block(std::string name, std::string text) { blocks.emplace_back(std::move(name), std::move(text)); }

    std::optional<std::string> get(std::string_view key) const;
    /// Throws InvalidArgument when the key is absent.
    std::string require(std::string_view key) const;
    std::vector<std::string> all(std::string_view key) const;

    std::optional<std::string> block(std::string_view name) const;
    std::string require_block(std::string_view name) const;
};

std::string format_certificate(const Certificate & c);

/// Throws ParseError.
Certificate parse_certificate(std::string_view text);

// Witness certificates. A missing witness records a negative result.
Certificate iso_certificate(const Machine & a, const Machine & b, const std::optional<Morphism> & m);
Certificate complete_certificate(const Machine & a, const Machine & b, const std::optional<CompletenessWitness> & w);
Certificate submachine_certificate(const Machine & a, const Machine & b, const std::optional<SubMachineWitness> & w);

/// Renders the witness lines of a certificate for human output.
std::string format_witness(const Certificate & c);

/// Recomputes the "output" block of a deterministic command (card,
/// universality, reduce, compile-tm, compile-mem, tm2mem, lockstep, sim,
/// check-lemmas) from the inputs recorded in the certificate.
std::string replay(const Certificate & c);

struct VerifyOutcome {
    bool valid = false;
    std::string method; ///< "witness checked", "recomputed" or "re-decided by search"
    std::string detail;
};

/// Positive witnesses are checked directly; negative answers have no witness
/// and are re-decided with the given limits; command outputs are recomputed.
VerifyOutcome verify_certificate(const Certificate & c, const SearchLimits & limits = {});

} // namespace memalg
