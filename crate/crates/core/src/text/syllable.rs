//! Vowel-group syllable counter with silent-e subtraction.

/// Count syllables: vowel groups (a, e, i, o, u, y) over the word's
/// letters, minus one for a trailing silent 'e' (kept after 'l' as in
/// "table"). Words containing letters count at least 1; tokens with no
/// letters count 0.
pub fn count_syllables(word: &str) -> usize {
    let letters: Vec<char> = word
        .chars()
        .filter(|c| c.is_alphabetic())
        .map(|c| c.to_ascii_lowercase())
        .collect();
    if letters.is_empty() {
        return 0;
    }
    let is_vowel = |c: char| matches!(c, 'a' | 'e' | 'i' | 'o' | 'u' | 'y');
    let mut groups = 0;
    let mut in_group = false;
    for &c in &letters {
        if is_vowel(c) {
            if !in_group {
                groups += 1;
                in_group = true;
            }
        } else {
            in_group = false;
        }
    }
    let n = letters.len();
    if groups > 1
        && letters[n - 1] == 'e'
        && !(n >= 2 && letters[n - 2] == 'l')
        && !(n >= 2 && is_vowel(letters[n - 2]))
    {
        groups -= 1;
    }
    groups.max(1)
}
