#include "bscoop/codec.hpp"

#include <algorithm>
#include <cstring>
#include <functional>
#include <set>

namespace bscoop {

namespace {

void chunk_scale_add(const Field& f, Chunk& dst, const Chunk& src, uint16_t coeff) {
  if (coeff == 0) return;
  for (size_t i = 0; i < dst.size(); ++i) dst[i] = f.add(dst[i], f.mul(coeff, src[i]));
}

}  // namespace

Codec::Codec(int n, int k, int t, int rho, Field field)
    : n_(n), k_(k), t_(t), rho_(rho), field_(std::move(field)), generator_(1, 1) {
  if (k < 1 || t < 1 || rho < 0) throw CodecError("codec: need k >= 1, t >= 1, rho >= 0");
  if (k > n - t) throw CodecError("codec: requires k <= n - t");
  if (n > static_cast<int>(field_.order())) throw CodecError("codec: n exceeds field order");
  generator_ = vandermonde(k_, n_, field_);
}

Codec::Codec(int n, int k, int t, int rho, Field field, Matrix generator)
    : Codec(n, k, t, rho, std::move(field)) {
  if (generator.rows != k_ || generator.cols != n_)
    throw CodecError("codec: generator must be k x n");
  if (n_ <= 8) {
    std::vector<int> pick(k_);
    std::function<void(int, int)> walk = [&](int depth, int next) {
      if (depth == k_) {
        mat_inv(field_, generator.columns(pick));  // throws when not MDS
        return;
      }
      for (int c = next; c <= n_ - (k_ - depth); ++c) {
        pick[depth] = c;
        walk(depth + 1, c + 1);
      }
    };
    try {
      walk(0, 0);
    } catch (const SingularMatrixError&) {
      throw CodecError("codec: generator has a singular k x k submatrix");
    }
  }
  generator_ = std::move(generator);
}

Codec::Encoded Codec::encode_symbols(const std::vector<uint16_t>& symbols) const {
  if (symbols.empty()) throw CodecError("encode: empty input");
  if (symbols.size() % chunk_count() != 0)
    throw CodecError("encode: symbol count must divide into k*(t+rho) chunks");
  for (uint16_t s : symbols)
    if (s >= field_.order()) throw CodecError("encode: symbol outside field");

  size_t chunk_len = symbols.size() / chunk_count();
  int rows = t_ + rho_;
  // message matrix, row-major: chunk (i, c) = symbols[(i*k + c) * chunk_len ...]
  std::vector<Chunk> message(static_cast<size_t>(rows) * k_);
  for (int i = 0; i < rows; ++i) {
    for (int c = 0; c < k_; ++c) {
      auto begin = symbols.begin() + (static_cast<size_t>(i) * k_ + c) * chunk_len;
      message[static_cast<size_t>(i) * k_ + c] = Chunk(begin, begin + chunk_len);
    }
  }

  Encoded out;
  out.chunk_len = chunk_len;
  out.nodes.resize(n_);
  for (int j = 1; j <= n_; ++j) {
    NodeStore& store = out.nodes[j - 1];
    store.node_id = j;
    store.column.resize(rows);
    for (int i = 0; i < rows; ++i) store.column[i] = column_entry(message, i, j);
  }
  out.stations.resize(rho_);
  for (int l = 1; l <= rho_; ++l) {
    BaseStationStore& bs = out.stations[l - 1];
    bs.layer = l;
    bs.row.assign(message.begin() + static_cast<size_t>(t_ + l - 1) * k_,
                  message.begin() + static_cast<size_t>(t_ + l) * k_);
  }
  return out;
}

Chunk Codec::column_entry(const std::vector<Chunk>& message, int row, int node_id) const {
  size_t chunk_len = message.front().size();
  Chunk result(chunk_len, 0);
  for (int c = 0; c < k_; ++c) {
    chunk_scale_add(field_, result, message[static_cast<size_t>(row) * k_ + c],
                    generator_.at(c, node_id - 1));
  }
  return result;
}

std::vector<uint16_t> Codec::collect_symbols(const std::vector<NodeStore>& any_k) const {
  if (static_cast<int>(any_k.size()) != k_) throw CodecError("collect: exactly k stores required");
  std::set<int> ids;
  std::vector<int> cols;
  for (const auto& store : any_k) {
    if (store.node_id < 1 || store.node_id > n_) throw CodecError("collect: bad node id");
    if (!ids.insert(store.node_id).second) throw CodecError("collect: duplicate node ids");
    if (static_cast<int>(store.column.size()) != t_ + rho_)
      throw CodecError("collect: store has wrong chunk count");
    cols.push_back(store.node_id - 1);
  }
  size_t chunk_len = any_k.front().column.front().size();
  for (const auto& store : any_k)
    for (const auto& chunk : store.column)
      if (chunk.size() != chunk_len) throw CodecError("collect: inconsistent chunk sizes");

  Matrix sub = generator_.columns(cols);
  Matrix inv = mat_inv(field_, sub);  // singular here means corrupted metadata

  int rows = t_ + rho_;
  std::vector<uint16_t> symbols(static_cast<size_t>(rows) * k_ * chunk_len);
  for (int i = 0; i < rows; ++i) {
    for (int c = 0; c < k_; ++c) {
      // m_i[c] = sum_s store_s.column[i] * inv(s, c)
      Chunk value(chunk_len, 0);
      for (int s = 0; s < k_; ++s) {
        chunk_scale_add(field_, value, any_k[s].column[i], inv.at(s, c));
      }
      std::copy(value.begin(), value.end(),
                symbols.begin() + (static_cast<size_t>(i) * k_ + c) * chunk_len);
    }
  }
  return symbols;
}

Codec::Encoded Codec::encode(const std::vector<uint8_t>& file) const {
  if (field_.p() != 2 || field_.q() != 8)
    throw CodecError("byte-level encode requires GF(2^8)");
  if (file.empty()) throw CodecError("encode: empty file");
  std::vector<uint16_t> symbols;
  uint64_t len = file.size();
  symbols.reserve(8 + file.size() + chunk_count());
  for (int i = 0; i < 8; ++i) symbols.push_back(static_cast<uint16_t>((len >> (8 * i)) & 0xFF));
  for (uint8_t byte : file) symbols.push_back(byte);
  while (symbols.size() % chunk_count() != 0) symbols.push_back(0);
  return encode_symbols(symbols);
}

std::vector<uint8_t> Codec::collect(const std::vector<NodeStore>& any_k) const {
  std::vector<uint16_t> symbols = collect_symbols(any_k);
  if (symbols.size() < 8) throw CodecError("collect: payload too short");
  uint64_t len = 0;
  for (int i = 0; i < 8; ++i) len |= static_cast<uint64_t>(symbols[i] & 0xFF) << (8 * i);
  if (8 + len > symbols.size()) throw CodecError("collect: corrupt length header");
  std::vector<uint8_t> file(len);
  for (uint64_t i = 0; i < len; ++i) file[i] = static_cast<uint8_t>(symbols[8 + i]);
  return file;
}

Codec::RepairSession Codec::repair(const std::vector<NodeStore>& alive,
                                   const std::vector<BaseStationStore>& stations,
                                   const std::vector<int>& failed,
                                   const std::vector<std::vector<int>>& helpers,
                                   PhaseOrder order) const {
  if (static_cast<int>(failed.size()) != t_)
    throw CodecError("repair: the construction regenerates exactly t newcomers");
  RepairSession session;
  session.failed = failed;
  std::sort(session.failed.begin(), session.failed.end());
  if (std::adjacent_find(session.failed.begin(), session.failed.end()) != session.failed.end())
    throw CodecError("repair: duplicate failed ids");
  for (int id : session.failed)
    if (id < 1 || id > n_) throw CodecError("repair: failed id out of range");
  if (static_cast<int>(helpers.size()) != t_)
    throw CodecError("repair: one helper set per newcomer required");
  if (static_cast<int>(stations.size()) < rho_)
    throw CodecError("repair: missing base station stores");

  auto find_store = [&](int id) -> const NodeStore& {
    for (const auto& store : alive)
      if (store.node_id == id) return store;
    throw CodecError("repair: helper store " + std::to_string(id) + " unavailable");
  };

  size_t chunk_len = 0;
  // phase 1: each newcomer rebuilds its message row from k helper chunks
  std::vector<std::vector<Chunk>> rows(t_);  // newcomer l-1 learns row l-1
  for (int l = 0; l < t_; ++l) {
    const auto& helper_ids = helpers[l];
    if (static_cast<int>(helper_ids.size()) != k_)
      throw CodecError("repair: each newcomer contacts exactly d = k helpers");
    std::set<int> seen;
    std::vector<int> cols;
    std::vector<const NodeStore*> stores;
    for (int id : helper_ids) {
      if (!seen.insert(id).second) throw CodecError("repair: duplicate helper");
      if (std::binary_search(session.failed.begin(), session.failed.end(), id))
        throw CodecError("repair: helper is one of the failed nodes");
      const NodeStore& store = find_store(id);
      stores.push_back(&store);
      cols.push_back(id - 1);
      session.transcript.push_back(Transfer{Transfer::Kind::Local, id, session.failed[l]});
    }
    Matrix inv = mat_inv(field_, generator_.columns(cols));
    chunk_len = stores.front()->column[l].size();
    rows[l].assign(k_, Chunk(chunk_len, 0));
    for (int c = 0; c < k_; ++c) {
      for (int s = 0; s < k_; ++s) {
        chunk_scale_add(field_, rows[l][c], stores[s]->column[l], inv.at(s, c));
      }
    }
  }
  session.chunk_len = chunk_len;

  session.rebuilt.resize(t_);
  for (int l = 0; l < t_; ++l) {
    session.rebuilt[l].node_id = session.failed[l];
    session.rebuilt[l].column.assign(t_ + rho_, Chunk());
    // own row entry comes from the reconstructed row, no transfer needed
    session.rebuilt[l].column[l] = column_entry(rows[l], 0, session.failed[l]);
  }

  auto run_coop = [&]() {
    for (int l = 0; l < t_; ++l) {
      for (int h = 0; h < t_; ++h) {
        if (h == l) continue;
        // newcomer l computes m_l^T g_{j_h} and sends it to newcomer h
        session.rebuilt[h].column[l] = column_entry(rows[l], 0, session.failed[h]);
        session.transcript.push_back(
            Transfer{Transfer::Kind::Coop, session.failed[l], session.failed[h]});
      }
    }
  };
  auto run_bs = [&]() {
    for (int l = 0; l < t_; ++l) {
      for (int layer = 1; layer <= rho_; ++layer) {
        const BaseStationStore* bs = nullptr;
        for (const auto& station : stations)
          if (station.layer == layer) bs = &station;
        if (bs == nullptr) throw CodecError("repair: base station layer missing");
        Chunk value(chunk_len, 0);
        for (int c = 0; c < k_; ++c)
          chunk_scale_add(field_, value, bs->row[c], generator_.at(c, session.failed[l] - 1));
        session.rebuilt[l].column[t_ + layer - 1] = std::move(value);
        session.transcript.push_back(Transfer{Transfer::Kind::Bs, layer, session.failed[l]});
      }
    }
  };

  if (order == PhaseOrder::CoopThenBs) {
    run_coop();
    run_bs();
  } else {
    run_bs();
    run_coop();
  }

  session.local_chunks_per_newcomer = k_;
  session.coop_chunks_per_newcomer = t_ - 1;
  session.bs_chunks_per_newcomer = rho_;
  return session;
}

Rat Codec::ledger_cost(const RepairSession& session, const std::vector<Rat>& w,
                       const Rat& F) const {
  Rat weighted = Rat(session.local_chunks_per_newcomer) + Rat(session.coop_chunks_per_newcomer);
  for (int l = 0; l < rho_; ++l) weighted += (l < static_cast<int>(w.size()) ? w[l] : Rat(1));
  return F / chunk_count() * weighted;
}

Rat Codec::data_moved_per_newcomer(const RepairSession& session, const Rat& F) const {
  return F / chunk_count() *
         (session.local_chunks_per_newcomer + session.coop_chunks_per_newcomer +
          session.bs_chunks_per_newcomer);
}

CostLedger Codec::session_ledger(const RepairSession& session, const std::vector<Rat>& w,
                                 const Rat& F) const {
  CostLedger ledger;
  ledger.local_symbols = session.local_chunks_per_newcomer * t_;
  ledger.coop_symbols = session.coop_chunks_per_newcomer * t_;
  ledger.bs_symbols.assign(std::max<size_t>(w.size(), rho_), 0);
  for (int l = 0; l < rho_; ++l) ledger.bs_symbols[l] = t_;
  ledger.symbol_size = F / chunk_count();
  ledger.total_cost = ledger.recompute(w);
  return ledger;
}

bool Codec::consistent(const std::vector<NodeStore>& stores) const {
  if (static_cast<int>(stores.size()) < k_) throw CodecError("consistent: need at least k stores");
  std::vector<NodeStore> first_k(stores.begin(), stores.begin() + k_);
  std::vector<uint16_t> symbols;
  try {
    symbols = collect_symbols(first_k);
  } catch (const CodecError&) {
    return false;
  }
  Encoded re = encode_symbols(symbols);
  for (const auto& store : stores) {
    const NodeStore& expected = re.nodes[store.node_id - 1];
    if (store.column != expected.column) return false;
  }
  return true;
}

namespace {

constexpr char kMagic[4] = {'B', 'S', 'C', 'S'};

void put_u32(std::vector<uint8_t>& out, uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<uint8_t>((v >> (8 * i)) & 0xFF));
}
void put_u64(std::vector<uint8_t>& out, uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<uint8_t>((v >> (8 * i)) & 0xFF));
}
uint32_t get_u32(const std::vector<uint8_t>& in, size_t& pos) {
  if (pos + 4 > in.size()) throw CodecError("store: truncated header");
  uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= static_cast<uint32_t>(in[pos++]) << (8 * i);
  return v;
}
uint64_t get_u64(const std::vector<uint8_t>& in, size_t& pos) {
  if (pos + 8 > in.size()) throw CodecError("store: truncated header");
  uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<uint64_t>(in[pos++]) << (8 * i);
  return v;
}

std::vector<uint8_t> serialize_store(const Codec& c, bool is_bs, int id,
                                     const std::vector<Chunk>& chunks) {
  std::vector<uint8_t> out;
  out.insert(out.end(), kMagic, kMagic + 4);
  out.push_back(1);  // version
  out.push_back(is_bs ? 1 : 0);
  put_u32(out, static_cast<uint32_t>(c.field().p()));
  put_u32(out, static_cast<uint32_t>(c.field().q()));
  put_u32(out, c.field().reduction_poly());
  put_u32(out, static_cast<uint32_t>(c.n()));
  put_u32(out, static_cast<uint32_t>(c.k()));
  put_u32(out, static_cast<uint32_t>(c.t()));
  put_u32(out, static_cast<uint32_t>(c.rho()));
  put_u32(out, static_cast<uint32_t>(id));
  put_u64(out, chunks.empty() ? 0 : chunks.front().size());
  put_u32(out, static_cast<uint32_t>(chunks.size()));
  bool wide = c.field().order() > 256;
  for (const auto& chunk : chunks) {
    for (uint16_t s : chunk) {
      out.push_back(static_cast<uint8_t>(s & 0xFF));
      if (wide) out.push_back(static_cast<uint8_t>((s >> 8) & 0xFF));
    }
  }
  return out;
}

}  // namespace

std::vector<uint8_t> serialize_node_store(const Codec& c, const Codec::NodeStore& store) {
  return serialize_store(c, false, store.node_id, store.column);
}

std::vector<uint8_t> serialize_bs_store(const Codec& c, const Codec::BaseStationStore& store) {
  return serialize_store(c, true, store.layer, store.row);
}

ParsedStore parse_store(const std::vector<uint8_t>& bytes) {
  if (bytes.size() < 6 || std::memcmp(bytes.data(), kMagic, 4) != 0)
    throw CodecError("store: bad magic");
  if (bytes[4] != 1) throw CodecError("store: unsupported version");
  ParsedStore parsed;
  parsed.is_bs = bytes[5] != 0;
  size_t pos = 6;
  parsed.p = static_cast<int>(get_u32(bytes, pos));
  parsed.q = static_cast<int>(get_u32(bytes, pos));
  parsed.poly = get_u32(bytes, pos);
  parsed.n = static_cast<int>(get_u32(bytes, pos));
  parsed.k = static_cast<int>(get_u32(bytes, pos));
  parsed.t = static_cast<int>(get_u32(bytes, pos));
  parsed.rho = static_cast<int>(get_u32(bytes, pos));
  parsed.id = static_cast<int>(get_u32(bytes, pos));
  uint64_t chunk_len = get_u64(bytes, pos);
  uint32_t chunk_count = get_u32(bytes, pos);

  uint64_t order = 1;
  for (int i = 0; i < parsed.q; ++i) order *= parsed.p;
  bool wide = order > 256;
  size_t need = static_cast<size_t>(chunk_len) * chunk_count * (wide ? 2 : 1);
  if (bytes.size() - pos != need) throw CodecError("store: payload size mismatch");
  parsed.chunks.assign(chunk_count, Chunk());
  for (uint32_t i = 0; i < chunk_count; ++i) {
    Chunk& chunk = parsed.chunks[i];
    chunk.resize(chunk_len);
    for (uint64_t s = 0; s < chunk_len; ++s) {
      uint16_t v = bytes[pos++];
      if (wide) v |= static_cast<uint16_t>(bytes[pos++]) << 8;
      chunk[s] = v;
    }
  }
  return parsed;
}

}  // namespace bscoop
