#include "lenc/encryptor.hpp"

#include <numeric>
#include <stdexcept>

namespace lenc {

namespace {

template <typename T>
void wipe(T &buf) {
  volatile std::uint8_t *p = reinterpret_cast<volatile std::uint8_t *>(buf.data());
  for (std::size_t i = 0; i < buf.size() * sizeof(buf[0]); ++i) p[i] = 0;
}

aes::Block pack_block(const BitString &bits, std::size_t offset) {
  aes::Block b{};
  for (std::size_t i = 0; i < 128; ++i)
    if (bits[offset + i]) b[i / 8] |= static_cast<std::uint8_t>(0x80u >> (i % 8));
  return b;
}

void unpack_block(const aes::Block &b, BitString &out) {
  for (std::size_t i = 0; i < 128; ++i) out.push_back((b[i / 8] >> (7 - i % 8)) & 1);
}

class AesCipher final : public BlockCipher {
 public:
  explicit AesCipher(const aes::Key128 &key) : aes_(key) {}
  aes::Block encrypt(const aes::Block &block) override { return aes_.encrypt(block); }

 private:
  aes::Aes128 aes_;
};

}  // namespace

std::string to_bit_text(const BitString &bits) {
  std::string s;
  s.reserve(bits.size());
  for (bool b : bits) s.push_back(b ? '1' : '0');
  return s;
}

BitString from_bit_text(const std::string &text) {
  BitString bits;
  for (char c : text) {
    if (c != '0' && c != '1') throw std::invalid_argument("bit string contains '" + std::string(1, c) + "'");
    bits.push_back(c == '1');
  }
  return bits;
}

std::string to_hex(const BitString &bits) {
  static constexpr char digits[] = "0123456789abcdef";
  std::string out;
  for (std::size_t i = 0; i < bits.size(); i += 8) {
    unsigned byte = 0;
    for (std::size_t k = 0; k < 8; ++k) byte = (byte << 1) | (i + k < bits.size() && bits[i + k] ? 1u : 0u);
    out.push_back(digits[byte >> 4]);
    out.push_back(digits[byte & 15]);
  }
  return out;
}

BitString from_hex(const std::string &hex, std::size_t bit_count) {
  if (hex.size() * 4 < bit_count) throw std::invalid_argument("hex string too short");
  BitString bits;
  for (char c : hex) {
    int v;
    if (c >= '0' && c <= '9') v = c - '0';
    else if (c >= 'a' && c <= 'f') v = c - 'a' + 10;
    else if (c >= 'A' && c <= 'F') v = c - 'A' + 10;
    else throw std::invalid_argument("invalid hex digit");
    for (int k = 3; k >= 0; --k) bits.push_back((v >> k) & 1);
  }
  bits.resize(bit_count);
  return bits;
}

bool CodingScheme::code(GateKind kind) const {
  if (kind == GateKind::NAND) return bit_for_nand;
  if (kind == GateKind::NOR) return bit_for_nor;
  throw NetlistError("gate kind " + std::string(to_string(kind)) + " has no code word");
}

CodingScheme make_coding_scheme(std::size_t gate_count, RandomSource &rng) {
  if (gate_count == 0) throw std::invalid_argument("coding scheme needs at least one gate");
  CodingScheme cs;
  cs.bit_for_nand = rng.next_bit();
  cs.bit_for_nor = !cs.bit_for_nand;
  cs.gate_order.resize(gate_count);
  std::iota(cs.gate_order.begin(), cs.gate_order.end(), std::size_t{0});
  shuffle(cs.gate_order, rng);
  return cs;
}

BitString encode(const MappedNetlist &m, const CodingScheme &cs) {
  const auto &gates = m.netlist.gates();
  if (cs.gate_order.size() != gates.size())
    throw std::invalid_argument("coding scheme covers " + std::to_string(cs.gate_order.size()) + " gates, netlist has " +
                                std::to_string(gates.size()));
  BitString plaintext;
  plaintext.reserve(gates.size());
  for (auto idx : cs.gate_order) plaintext.push_back(cs.code(gates.at(idx).kind));
  return plaintext;
}

aes::Key128 draw_block_key(RandomSource &rng) {
  aes::Key128 key;
  rng.fill(key);
  return key;
}

EncryptionTrace encrypt(const BitString &plaintext, RandomSource &rng, BlockCipher &cipher) {
  if (plaintext.empty()) throw std::invalid_argument("cannot encrypt an empty plaintext");
  EncryptionTrace trace;
  trace.plaintext_len = plaintext.size();
  const std::size_t padded = (plaintext.size() + 127) / 128 * 128;
  trace.pad_len = padded - plaintext.size();
  BitString message = plaintext;
  BitString pad = rng.bits(trace.pad_len);
  message.insert(message.end(), pad.begin(), pad.end());
  trace.ciphertext.reserve(padded);
  for (std::size_t off = 0; off < padded; off += 128) {
    aes::Block block = pack_block(message, off);
    unpack_block(cipher.encrypt(block), trace.ciphertext);
    wipe(block);
  }
  return trace;
}

EncryptionTrace encrypt(const BitString &plaintext, RandomSource &rng) {
  aes::Key128 key = draw_block_key(rng);
  AesCipher cipher(key);
  wipe(key);
  return encrypt(plaintext, rng, cipher);
}

Netlist decode(const EncryptionTrace &trace, const CodingScheme &cs, const MappedNetlist &m) {
  const auto &gates = m.netlist.gates();
  if (trace.plaintext_len != gates.size() || cs.gate_order.size() != gates.size() ||
      trace.ciphertext.size() < trace.plaintext_len)
    throw std::invalid_argument("trace length " + std::to_string(trace.plaintext_len) + " does not match " +
                                std::to_string(gates.size()) + " mapped gates");
  RawNetlist raw = m.netlist.raw();
  for (std::size_t i = 0; i < cs.gate_order.size(); ++i) raw.gates.at(cs.gate_order[i]).kind = cs.kind_for(trace.ciphertext[i]);
  return Netlist::build(std::move(raw));
}

std::size_t count_kind_flips(const Netlist &a, const Netlist &b) {
  if (a.gates().size() != b.gates().size()) throw std::invalid_argument("gate lists differ in length");
  std::size_t flips = 0;
  for (std::size_t i = 0; i < a.gates().size(); ++i) flips += a.gates()[i].kind != b.gates()[i].kind;
  return flips;
}

}  // namespace lenc
