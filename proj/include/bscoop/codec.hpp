#pragma once

#include "bscoop/gf.hpp"
#include "bscoop/model.hpp"

#include <cstdint>
#include <vector>

namespace bscoop {

class CodecError : public std::runtime_error {
 public:
  explicit CodecError(const std::string& what) : std::runtime_error(what) {}
};

using Chunk = std::vector<uint16_t>;  // one file division, symbol-wise

// Exact-repair regenerating code with d = k helpers and rho assisting base
// stations, each with unit link fraction. The file splits into k*(t+rho)
// chunks arranged as a (t+rho) x k message matrix M; node j stores column j
// of M*G for a Vandermonde generator G, and base station l stores message
// row t+l, serving m_{t+l}^T g_j on request for any node id j.
class Codec {
 public:
  Codec(int n, int k, int t, int rho, Field field);

  // Same code with a caller-supplied k x n generator; every k x k column
  // submatrix must be invertible (checked exhaustively for n <= 8).
  Codec(int n, int k, int t, int rho, Field field, Matrix generator);

  int n() const { return n_; }
  int k() const { return k_; }
  int t() const { return t_; }
  int rho() const { return rho_; }
  int chunk_count() const { return k_ * (t_ + rho_); }
  const Field& field() const { return field_; }
  const Matrix& generator() const { return generator_; }

  struct NodeStore {
    int node_id = 0;            // 1..n
    std::vector<Chunk> column;  // t+rho chunks, entry i = m_i^T g_j
  };
  struct BaseStationStore {
    int layer = 0;          // 1..rho
    std::vector<Chunk> row;  // k chunks of message row t+layer
  };
  struct Encoded {
    std::vector<NodeStore> nodes;
    std::vector<BaseStationStore> stations;
    size_t chunk_len = 0;  // symbols per chunk
  };

  // Symbol-level interface, any field. Symbol count must divide into
  // k*(t+rho) equal chunks.
  Encoded encode_symbols(const std::vector<uint16_t>& symbols) const;
  std::vector<uint16_t> collect_symbols(const std::vector<NodeStore>& any_k) const;

  // Byte-level interface over GF(2^8): the payload is an 8-byte little-endian
  // length header plus the file, zero-padded to a chunk multiple.
  Encoded encode(const std::vector<uint8_t>& file) const;
  std::vector<uint8_t> collect(const std::vector<NodeStore>& any_k) const;

  struct Transfer {
    enum class Kind { Local, Coop, Bs };
    Kind kind = Kind::Local;
    int from = 0;  // helper/newcomer node id, or layer for Bs
    int to = 0;    // receiving newcomer id
  };

  struct RepairSession {
    std::vector<int> failed;                // ascending
    std::vector<std::vector<int>> helpers;  // per newcomer
    std::vector<Transfer> transcript;
    std::vector<NodeStore> rebuilt;
    long long local_chunks_per_newcomer = 0;
    long long coop_chunks_per_newcomer = 0;
    long long bs_chunks_per_newcomer = 0;  // one per assisting layer
    size_t chunk_len = 0;
  };

  enum class PhaseOrder { CoopThenBs, BsThenCoop };

  // Regenerates exactly t newcomers: k local downloads, t-1 cooperative
  // exchanges, and one chunk per base station for each newcomer. The rebuilt
  // columns equal the originals bit for bit.
  RepairSession repair(const std::vector<NodeStore>& alive,
                       const std::vector<BaseStationStore>& stations,
                       const std::vector<int>& failed,
                       const std::vector<std::vector<int>>& helpers,
                       PhaseOrder order = PhaseOrder::CoopThenBs) const;

  // Per-newcomer repair cost in file-size units:
  // (k + (t-1) + sum_{l<=rho} w_l) / (k*(t+rho)) * F.
  Rat ledger_cost(const RepairSession& session, const std::vector<Rat>& w, const Rat& F) const;

  // Unweighted data volume per newcomer, d + rho + t - 1 chunks, in the same
  // units as F.
  Rat data_moved_per_newcomer(const RepairSession& session, const Rat& F) const;

  // Accounting record for a whole session (t newcomers).
  CostLedger session_ledger(const RepairSession& session, const std::vector<Rat>& w,
                            const Rat& F) const;

  // Decodes from the first k provided stores, re-encodes, and checks every
  // provided store against the result.
  bool consistent(const std::vector<NodeStore>& stores) const;

 private:
  Chunk column_entry(const std::vector<Chunk>& message_row_major, int row, int node_id) const;

  int n_, k_, t_, rho_;
  Field field_;
  Matrix generator_;
};

// Store files: fixed header (magic, field spec, code parameters, store id,
// chunk geometry) followed by raw symbols; round-trips bit-exactly.
std::vector<uint8_t> serialize_node_store(const Codec& c, const Codec::NodeStore& store);
std::vector<uint8_t> serialize_bs_store(const Codec& c, const Codec::BaseStationStore& store);

struct ParsedStore {
  int p = 0, q = 0;
  uint32_t poly = 0;
  int n = 0, k = 0, t = 0, rho = 0;
  bool is_bs = false;
  int id = 0;  // node id or layer
  std::vector<Chunk> chunks;
};
ParsedStore parse_store(const std::vector<uint8_t>& bytes);

}  // namespace bscoop
