#include "exsim/audit.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace exsim {

namespace {

void put_i64(std::vector<std::uint8_t>& out, std::int64_t v) {
    for (int i = 0; i < 8; ++i) out.push_back(static_cast<std::uint8_t>(static_cast<std::uint64_t>(v) >> (8 * i)));
}

} // namespace

int circuit_eval(const EpisodeTranscript& transcript, const ConstraintSet& constraints) {
    std::int64_t prev_step = -1;
    std::int64_t prev_venue = -1;
    for (const TranscriptRecord& r : transcript.records()) {
        const bool ordered = r.step > prev_step || (r.step == prev_step && r.venue > prev_venue);
        if (!ordered) throw std::runtime_error("MalformedTranscript: records out of order");
        prev_step = r.step;
        prev_venue = r.venue;
        if (r.exec_volume < 0 || r.vhat < 0 || r.best_bid < 0)
            throw std::runtime_error("MalformedTranscript: negative field");

        if (r.exec_self_cross) return 0;
        if (r.exec_volume == 0) continue; // no order reached the market
        if (r.exec_volume > constraints.volume_cap(r.vhat)) return 0;
        if (r.exec_price < constraints.price_floor(r.best_bid)) return 0;
    }
    return 1;
}

Digest256 public_inputs_digest(const EpisodeTranscript& transcript) {
    std::vector<std::uint8_t> bytes;
    bytes.reserve(transcript.records().size() * 32);
    for (const TranscriptRecord& r : transcript.records()) {
        put_i64(bytes, r.step);
        put_i64(bytes, r.venue);
        put_i64(bytes, r.vhat);
        put_i64(bytes, r.best_bid);
    }
    return Sha256::hash(bytes);
}

AuditArtifact prove(const EpisodeTranscript& transcript, const ConstraintSet& constraints,
                    AuditMode mode) {
    AuditArtifact art;
    art.mode = mode;
    art.statement.episode_id = transcript.header().episode_id;
    art.statement.seed = transcript.header().seed;
    art.statement.alpha_ppm = constraints.alpha_ppm;
    art.statement.beta_ppm = constraints.beta_ppm;
    art.statement.record_count = static_cast<std::int64_t>(transcript.records().size());
    art.statement.public_inputs_digest = public_inputs_digest(transcript);
    art.statement.chain_digest = transcript.digest();
    art.circuit_bit = circuit_eval(transcript, constraints);
    if (mode == AuditMode::Open) art.transcript = transcript;
    return art;
}

std::string AuditArtifact::serialize() const {
    std::ostringstream os;
    os << "EXAU0001\n";
    os << "mode " << (mode == AuditMode::Mock ? "MOCK" : "OPEN") << "\n";
    os << "episode " << statement.episode_id << "\n";
    os << "seed " << statement.seed << "\n";
    os << "alpha_ppm " << statement.alpha_ppm << "\n";
    os << "beta_ppm " << statement.beta_ppm << "\n";
    os << "records " << statement.record_count << "\n";
    os << "public_inputs_digest " << to_hex(statement.public_inputs_digest) << "\n";
    os << "chain_digest " << to_hex(statement.chain_digest) << "\n";
    os << "circuit_bit " << circuit_bit << "\n";
    if (mode == AuditMode::Open) {
        os << "---\n";
        if (transcript.has_value()) os << transcript->to_text();
    }
    return os.str();
}

AuditArtifact AuditArtifact::deserialize(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    auto fail = [](const std::string& why) -> void {
        throw std::runtime_error("MalformedArtifact: " + why);
    };
    if (!std::getline(is, line) || line != "EXAU0001") fail("bad magic");

    AuditArtifact art;
    bool have_mode = false, have_chain = false, have_pub = false, have_bit = false;
    while (std::getline(is, line)) {
        if (line == "---") {
            std::ostringstream rest;
            rest << is.rdbuf();
            Digest256 claimed{};
            art.transcript = EpisodeTranscript::from_text(rest.str(), &claimed);
            art.embedded_digest = claimed;
            break;
        }
        std::istringstream ls(line);
        std::string key;
        if (!(ls >> key)) continue;
        if (key == "mode") {
            std::string m;
            ls >> m;
            if (m == "MOCK") art.mode = AuditMode::Mock;
            else if (m == "OPEN") art.mode = AuditMode::Open;
            else fail("unknown mode");
            have_mode = true;
        } else if (key == "episode") {
            ls >> art.statement.episode_id;
        } else if (key == "seed") {
            ls >> art.statement.seed;
        } else if (key == "alpha_ppm") {
            ls >> art.statement.alpha_ppm;
        } else if (key == "beta_ppm") {
            ls >> art.statement.beta_ppm;
        } else if (key == "records") {
            ls >> art.statement.record_count;
        } else if (key == "public_inputs_digest") {
            std::string hex;
            ls >> hex;
            if (!from_hex(hex, art.statement.public_inputs_digest)) fail("bad public input digest");
            have_pub = true;
        } else if (key == "chain_digest") {
            std::string hex;
            ls >> hex;
            if (!from_hex(hex, art.statement.chain_digest)) fail("bad chain digest");
            have_chain = true;
        } else if (key == "circuit_bit") {
            ls >> art.circuit_bit;
            have_bit = true;
        } else {
            fail("unknown key: " + key);
        }
    }
    if (!have_mode || !have_chain || !have_pub || !have_bit) fail("missing fields");
    return art;
}

VerifyOutcome verify(const AuditArtifact& artifact) {
    const ComplianceStatement& st = artifact.statement;
    if (st.alpha_ppm < 0 || st.alpha_ppm > kPpmOne || st.beta_ppm < 0 || st.beta_ppm > kPpmOne)
        return {false, "reject: constraint fractions out of range"};
    if (artifact.circuit_bit != 0 && artifact.circuit_bit != 1)
        return {false, "reject: circuit bit must be 0 or 1"};
    if (st.record_count < 0) return {false, "reject: negative record count"};

    if (artifact.mode == AuditMode::Mock) {
        // Trusted-prover emulation: the statement is internally consistent and
        // claims compliance, but nothing is recomputed. Zero-knowledge
        // soundness is explicitly not provided in this mode.
        if (artifact.circuit_bit != 1) return {false, "reject: noncompliant (circuit bit 0)"};
        return {true, "ok (mock mode, trusted prover)"};
    }

    if (!artifact.transcript.has_value()) return {false, "reject: open artifact lacks transcript"};
    const EpisodeTranscript& tr = *artifact.transcript;

    if (static_cast<std::int64_t>(tr.records().size()) != st.record_count)
        return {false, "reject: record count mismatch"};
    if (tr.header().episode_id != st.episode_id || tr.header().seed != st.seed)
        return {false, "reject: statement does not match transcript header"};
    if (tr.header().alpha_ppm != st.alpha_ppm || tr.header().beta_ppm != st.beta_ppm)
        return {false, "reject: constraint set mismatch"};

    const Digest256 chain = EpisodeTranscript::recompute_digest(tr.header(), tr.records());
    if (!(chain == st.chain_digest)) return {false, "reject: chain mismatch"};
    if (artifact.embedded_digest.has_value() && !(*artifact.embedded_digest == st.chain_digest))
        return {false, "reject: chain mismatch"};
    if (!(public_inputs_digest(tr) == st.public_inputs_digest))
        return {false, "reject: public input commitment mismatch"};

    ConstraintSet constraints;
    constraints.alpha_ppm = st.alpha_ppm;
    constraints.beta_ppm = st.beta_ppm;
    int bit = 0;
    try {
        bit = circuit_eval(tr, constraints);
    } catch (const std::exception& e) {
        return {false, std::string("reject: ") + e.what()};
    }
    if (bit != artifact.circuit_bit) return {false, "reject: circuit mismatch"};
    if (bit != 1) return {false, "reject: noncompliant (circuit bit 0)"};
    return {true, "ok"};
}

void write_artifact_file(const AuditArtifact& artifact, const std::string& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open artifact file for writing: " + path);
    os << artifact.serialize();
}

AuditArtifact read_artifact_file(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("FileNotFound: " + path);
    std::ostringstream ss;
    ss << is.rdbuf();
    return AuditArtifact::deserialize(ss.str());
}

} // namespace exsim
