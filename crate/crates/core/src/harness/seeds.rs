use sha2::{Digest, Sha256};

/// Stable 64-bit seed from a base seed and a sequence of words.
///
/// Depends only on its inputs, never on iteration order or thread scheduling.
pub fn derive_seed(base_seed: u64, words: &[u64]) -> u64 {
    let mut hasher = Sha256::new();
    hasher.update(base_seed.to_le_bytes());
    for w in words {
        hasher.update(w.to_le_bytes());
    }
    let digest = hasher.finalize();
    let mut bytes = [0u8; 8];
    bytes.copy_from_slice(&digest[..8]);
    base_seed ^ u64::from_le_bytes(bytes)
}
