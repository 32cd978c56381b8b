#include "exsim/transcript.hpp"

#include <cstring>
#include <sstream>
#include <stdexcept>

namespace exsim {

namespace {

void put_u64(std::vector<std::uint8_t>& out, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

void put_i64(std::vector<std::uint8_t>& out, std::int64_t v) {
    put_u64(out, static_cast<std::uint64_t>(v));
}

constexpr char kHeaderMagic[8] = {'E', 'X', 'T', 'R', '0', '0', '0', '1'};

} // namespace

std::vector<std::uint8_t> EpisodeTranscript::canonical_bytes(const TranscriptHeader& h) {
    std::vector<std::uint8_t> out;
    out.reserve(8 + 7 * 8);
    out.insert(out.end(), kHeaderMagic, kHeaderMagic + 8);
    put_u64(out, h.episode_id);
    put_u64(out, h.seed);
    put_i64(out, h.alpha_ppm);
    put_i64(out, h.beta_ppm);
    put_i64(out, h.parent_qty);
    put_i64(out, h.horizon);
    put_i64(out, h.venues);
    return out;
}

std::vector<std::uint8_t> EpisodeTranscript::canonical_bytes(const TranscriptRecord& r) {
    std::vector<std::uint8_t> out;
    out.reserve(12 * 8 + r.reports.size() * 4 * 8);
    put_i64(out, r.step);
    put_i64(out, r.venue);
    put_i64(out, r.raw_volume);
    put_i64(out, r.raw_price);
    put_i64(out, r.exec_volume);
    put_i64(out, r.exec_price);
    put_i64(out, r.vhat);
    put_i64(out, r.best_bid);
    put_i64(out, r.fill_qty);
    put_i64(out, r.fill_notional_ticks);
    put_u64(out, r.exec_self_cross ? 1 : 0);
    put_u64(out, r.reports.size());
    for (const ViolationReport& rep : r.reports) {
        put_u64(out, static_cast<std::uint64_t>(rep.kind));
        put_i64(out, rep.raw_value);
        put_i64(out, rep.limit_value);
        put_i64(out, rep.magnitude);
    }
    return out;
}

EpisodeTranscript::EpisodeTranscript(const TranscriptHeader& header) : header_(header) {
    digest_ = Sha256::hash(canonical_bytes(header_));
}

Digest256 EpisodeTranscript::record(const TranscriptRecord& rec) {
    if (!records_.empty()) {
        const TranscriptRecord& prev = records_.back();
        const bool ordered =
            rec.step > prev.step || (rec.step == prev.step && rec.venue > prev.venue);
        if (!ordered)
            throw std::invalid_argument("OutOfOrder: transcript records must advance (step, venue)");
    }
    Sha256 h;
    h.update(digest_.data(), digest_.size());
    h.update(canonical_bytes(rec));
    digest_ = h.finish();
    records_.push_back(rec);
    return digest_;
}

Digest256 EpisodeTranscript::recompute_digest(const TranscriptHeader& header,
                                              const std::vector<TranscriptRecord>& records) {
    Digest256 d = Sha256::hash(canonical_bytes(header));
    for (const TranscriptRecord& rec : records) {
        Sha256 h;
        h.update(d.data(), d.size());
        h.update(canonical_bytes(rec));
        d = h.finish();
    }
    return d;
}

std::string EpisodeTranscript::to_text() const {
    std::ostringstream os;
    os << "episode " << header_.episode_id << " seed " << header_.seed << " alpha_ppm "
       << header_.alpha_ppm << " beta_ppm " << header_.beta_ppm << " q0 " << header_.parent_qty
       << " horizon " << header_.horizon << " venues " << header_.venues << "\n";
    for (const TranscriptRecord& r : records_) {
        os << r.step << ' ' << r.venue << ' ' << r.raw_volume << ' ' << r.raw_price << ' '
           << r.exec_volume << ' ' << r.exec_price << ' ' << r.vhat << ' ' << r.best_bid << ' '
           << r.fill_qty << ' ' << r.fill_notional_ticks << ' ' << (r.exec_self_cross ? 1 : 0)
           << ' ' << r.reports.size();
        for (const ViolationReport& rep : r.reports) {
            os << ' ' << static_cast<int>(rep.kind) << ':' << rep.raw_value << ':'
               << rep.limit_value << ':' << rep.magnitude;
        }
        os << "\n";
    }
    os << "digest " << to_hex(digest_) << "\n";
    return os.str();
}

EpisodeTranscript EpisodeTranscript::from_text(const std::string& text, Digest256* claimed_digest) {
    std::istringstream is(text);
    std::string line;
    if (!std::getline(is, line)) throw std::runtime_error("MalformedTranscript: empty input");

    TranscriptHeader header;
    {
        std::istringstream hs(line);
        std::string k1, k2, k3, k4, k5, k6, k7;
        if (!(hs >> k1 >> header.episode_id >> k2 >> header.seed >> k3 >> header.alpha_ppm >> k4 >>
              header.beta_ppm >> k5 >> header.parent_qty >> k6 >> header.horizon >> k7 >>
              header.venues) ||
            k1 != "episode" || k2 != "seed" || k3 != "alpha_ppm" || k4 != "beta_ppm" || k5 != "q0" ||
            k6 != "horizon" || k7 != "venues")
            throw std::runtime_error("MalformedTranscript: bad header line");
    }

    EpisodeTranscript tr(header);
    Digest256 claimed{};
    bool saw_digest = false;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        if (line.rfind("digest ", 0) == 0) {
            if (!from_hex(line.substr(7), claimed))
                throw std::runtime_error("MalformedTranscript: bad digest line");
            saw_digest = true;
            break;
        }
        std::istringstream rs(line);
        TranscriptRecord r;
        std::size_t n_reports = 0;
        int self_cross = 0;
        if (!(rs >> r.step >> r.venue >> r.raw_volume >> r.raw_price >> r.exec_volume >>
              r.exec_price >> r.vhat >> r.best_bid >> r.fill_qty >> r.fill_notional_ticks >>
              self_cross >> n_reports))
            throw std::runtime_error("MalformedTranscript: bad record line");
        r.exec_self_cross = self_cross != 0;
        for (std::size_t i = 0; i < n_reports; ++i) {
            std::string tok;
            if (!(rs >> tok)) throw std::runtime_error("MalformedTranscript: missing report");
            ViolationReport rep;
            rep.step = r.step;
            rep.venue = r.venue;
            for (char& c : tok)
                if (c == ':') c = ' ';
            std::istringstream ts(tok);
            int kind = 0;
            if (!(ts >> kind >> rep.raw_value >> rep.limit_value >> rep.magnitude))
                throw std::runtime_error("MalformedTranscript: bad report token");
            rep.kind = static_cast<ViolationKind>(kind);
            r.reports.push_back(rep);
        }
        tr.record(r);
    }
    if (!saw_digest) throw std::runtime_error("MalformedTranscript: missing digest line");
    if (claimed_digest != nullptr) *claimed_digest = claimed;
    return tr;
}

} // namespace exsim
