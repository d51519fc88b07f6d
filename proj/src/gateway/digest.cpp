#include <openssl/evp.h>

#include <memory>

#include "spellgraph/gateway/gateway.hpp"

namespace spellgraph::gateway {

std::string message_digest(const prompts::PromptBundle& bundle) {
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("sha256 unavailable");
  }
  for (const prompts::ChatMessage& m : bundle.messages) {
    const std::string_view role = prompts::to_string(m.role);
    EVP_DigestUpdate(ctx.get(), role.data(), role.size());
    EVP_DigestUpdate(ctx.get(), ":", 1);
    EVP_DigestUpdate(ctx.get(), m.content.data(), m.content.size());
    EVP_DigestUpdate(ctx.get(), "\0", 1);
  }
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx.get(), md, &len);

  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(len * 2);
  for (unsigned int i = 0; i < len; ++i) {
    out += kHex[md[i] >> 4];
    out += kHex[md[i] & 0xf];
  }
  return out;
}

}  // namespace spellgraph::gateway
