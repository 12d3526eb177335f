//! Failure-function (Knuth–Morris–Pratt) matching over letter sequences.

/// `fail[i]` is the length of the longest proper border of `pattern[..i]`.
pub fn failure_function<T: PartialEq>(pattern: &[T]) -> Vec<usize> {
    let mut fail = vec![0; pattern.len() + 1];
    let mut k = 0;
    for i in 1..pattern.len() {
        while k > 0 && pattern[i] != pattern[k] {
            k = fail[k];
        }
        if pattern[i] == pattern[k] {
            k += 1;
        }
        fail[i + 1] = k;
    }
    fail
}

/// First occurrence of `pattern` in `text`.
pub fn find<T: PartialEq>(text: &[T], pattern: &[T]) -> Option<usize> {
    if pattern.is_empty() {
        return Some(0);
    }
    let fail = failure_function(pattern);
    let mut k = 0;
    for (i, t) in text.iter().enumerate() {
        while k > 0 && *t != pattern[k] {
            k = fail[k];
        }
        if *t == pattern[k] {
            k += 1;
        }
        if k == pattern.len() {
            return Some(i + 1 - k);
        }
    }
    None
}

/// Offset `i` such that `b` is `a` rotated left by `i`, if any.
pub fn rotation_offset<T: PartialEq + Clone>(a: &[T], b: &[T]) -> Option<usize> {
    if a.len() != b.len() {
        return None;
    }
    if a.is_empty() {
        return Some(0);
    }
    let doubled: Vec<T> = a.iter().chain(a.iter()).cloned().collect();
    find(&doubled[..2 * a.len() - 1], b)
}

/// Smallest `p` dividing `s.len()` with `s` equal to its prefix of length `p`
/// repeated.
pub fn primitive_period<T: PartialEq>(s: &[T]) -> usize {
    let n = s.len();
    if n == 0 {
        return 0;
    }
    let p = n - failure_function(s)[n];
    if n.is_multiple_of(p) {
        p
    } else {
        n
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn naive_find(text: &[u8], pattern: &[u8]) -> Option<usize> {
        if pattern.len() > text.len() {
            return None;
        }
        (0..=text.len() - pattern.len()).find(|&i| &text[i..i + pattern.len()] == pattern)
    }

    #[test]
    fn rotations() {
        assert_eq!(rotation_offset(b"abcd", b"cdab"), Some(2));
        assert_eq!(rotation_offset(b"abcd", b"abcd"), Some(0));
        assert_eq!(rotation_offset(b"abcd", b"acbd"), None);
        assert_eq!(rotation_offset(b"ab", b"abc"), None);
    }

    #[test]
    fn periods() {
        assert_eq!(primitive_period(b"ababab"), 2);
        assert_eq!(primitive_period(b"abaab"), 5);
        assert_eq!(primitive_period(b"aaaa"), 1);
        assert_eq!(primitive_period(b"abcab"), 5);
    }

    proptest! {
        #[test]
        fn kmp_matches_naive(text in prop::collection::vec(0u8..3, 0..40), pattern in prop::collection::vec(0u8..3, 0..5)) {
            prop_assert_eq!(find(&text, &pattern), naive_find(&text, &pattern));
        }

        #[test]
        fn period_is_smallest_root(s in prop::collection::vec(0u8..2, 1..24)) {
            let p = primitive_period(&s);
            let naive = (1..=s.len()).find(|&q| s.len() % q == 0 && s.chunks(q).all(|c| c == &s[..q])).unwrap();
            prop_assert_eq!(p, naive);
        }
    }
}
