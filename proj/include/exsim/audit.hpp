#pragma once

#include "exsim/transcript.hpp"

#include <optional>
#include <string>
#include <vector>

namespace exsim {

/// What an external party sees: the episode identity, the constraint set, a
/// commitment to the public input series, and the final chain digest. No raw
/// or executed action values appear here.
struct ComplianceStatement {
    std::uint64_t episode_id = 0;
    std::uint64_t seed = 0;
    Ppm alpha_ppm = 0;
    Ppm beta_ppm = 0;
    std::int64_t record_count = 0;
    Digest256 public_inputs_digest{}; // H over the (vhat, best_bid) series
    Digest256 chain_digest{};

    bool operator==(const ComplianceStatement&) const = default;
};

enum class AuditMode : std::uint8_t {
    Mock, // compact artifact; integrity rests on the trusted prover
    Open  // embeds the transcript so the verifier recomputes everything
};

struct AuditArtifact {
    AuditMode mode = AuditMode::Mock;
    ComplianceStatement statement;
    int circuit_bit = 0;
    std::optional<EpisodeTranscript> transcript; // present in Open mode
    std::optional<Digest256> embedded_digest;    // digest line of the embedded transcript

    std::string serialize() const;
    static AuditArtifact deserialize(const std::string& text); // throws MalformedArtifact
};

struct VerifyOutcome {
    bool accepted = false;
    std::string reason; // "ok" or the rejection reason
};

/// Pure compliance predicate over a finished transcript: 1 iff every record's
/// executed order satisfies the volume cap against the recorded vhat, the
/// price collar against the recorded bid, and carries no self-cross flag.
int circuit_eval(const EpisodeTranscript& transcript, const ConstraintSet& constraints);

Digest256 public_inputs_digest(const EpisodeTranscript& transcript);

AuditArtifact prove(const EpisodeTranscript& transcript, const ConstraintSet& constraints,
                    AuditMode mode);

/// Mock mode rechecks statement consistency and digest format only (trusted
/// prover emulation). Open mode recomputes the hash chain, the public-input
/// commitment, and the circuit bit from the embedded transcript and accepts
/// iff everything matches and the bit is 1.
VerifyOutcome verify(const AuditArtifact& artifact);

void write_artifact_file(const AuditArtifact& artifact, const std::string& path);
AuditArtifact read_artifact_file(const std::string& path);

} // namespace exsim
