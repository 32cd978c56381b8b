#pragma once

#include "exsim/sha256.hpp"
#include "exsim/shield.hpp"
#include "exsim/types.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace exsim {

/// Header binding a transcript to one episode and its constraint set.
struct TranscriptHeader {
    std::uint64_t episode_id = 0;
    std::uint64_t seed = 0;
    Ppm alpha_ppm = 0;
    Ppm beta_ppm = 0;
    Shares parent_qty = 0;
    std::int64_t horizon = 0;
    std::int64_t venues = 0;

    bool operator==(const TranscriptHeader&) const = default;
};

/// One (step, venue) record. All fields are integers so the canonical byte
/// serialization and the text file form round-trip exactly.
struct TranscriptRecord {
    std::int64_t step = 0;
    VenueId venue = 0;
    Shares raw_volume = 0;
    Ticks raw_price = 0;
    Shares exec_volume = 0;
    Ticks exec_price = 0;
    Shares vhat = 0;       // public input: previous-interval volume estimate
    Ticks best_bid = 0;    // public input: reference bid (0 when absent)
    Shares fill_qty = 0;
    std::int64_t fill_notional_ticks = 0; // sum of qty * price over fills
    bool exec_self_cross = false;         // executed order crossed a live own order
    std::vector<ViolationReport> reports; // raw-action reports from the shield

    bool operator==(const TranscriptRecord&) const = default;
};

/// Append-only, hash-chained episode transcript:
///   h_0 = H(header), h_t = H(h_{t-1} || canonical(record_t)).
class EpisodeTranscript {
public:
    EpisodeTranscript() = default;
    explicit EpisodeTranscript(const TranscriptHeader& header);

    /// Appends a record; records must arrive in non-decreasing step order and
    /// strictly increasing (step, venue). Returns the updated chain digest.
    Digest256 record(const TranscriptRecord& rec);

    const TranscriptHeader& header() const { return header_; }
    const std::vector<TranscriptRecord>& records() const { return records_; }
    const Digest256& digest() const { return digest_; }

    /// Canonical little-endian byte form of one record (hash input).
    static std::vector<std::uint8_t> canonical_bytes(const TranscriptRecord& rec);
    static std::vector<std::uint8_t> canonical_bytes(const TranscriptHeader& header);

    /// Recomputes the full chain from the stored header and records.
    static Digest256 recompute_digest(const TranscriptHeader& header,
                                      const std::vector<TranscriptRecord>& records);

    /// Text form: one header line, one line per record, one digest line.
    /// Parsing recomputes the chain from the records; the text's digest line
    /// is returned through `claimed_digest` for the verifier to compare.
    std::string to_text() const;
    static EpisodeTranscript from_text(const std::string& text, Digest256* claimed_digest = nullptr);

private:
    TranscriptHeader header_;
    std::vector<TranscriptRecord> records_;
    Digest256 digest_{};
};

} // namespace exsim
