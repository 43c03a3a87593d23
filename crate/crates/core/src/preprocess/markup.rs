//! Tag removal and character-entity decoding for HTML/XML input.

/// Removes every `<...>` span (replacing it with one space) and decodes the
/// entities `&amp;`, `&lt;`, `&gt;`, `&quot;` and numeric `&#NN;` / `&#xHH;`.
///
/// Entity names match case-insensitively. A `<` with no closing `>` is kept
/// as a literal character. Unknown or malformed entities are left untouched. Decoded characters are never
/// re-read as markup, so `&lt;b&gt;` survives as the text `<b>`.
pub fn strip_markup(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    let mut rest = text;
    while let Some(pos) = rest.find(['<', '&']) {
        out.push_str(&rest[..pos]);
        let tail = &rest[pos..];
        if let Some(after) = tail.strip_prefix('<') {
            match after.find('>') {
                Some(end) => {
                    out.push(' ');
                    rest = &after[end + 1..];
                }
                None => {
                    out.push('<');
                    rest = after;
                }
            }
        } else {
            match decode_entity(tail) {
                Some((ch, len)) => {
                    out.push(ch);
                    rest = &tail[len..];
                }
                None => {
                    out.push('&');
                    rest = &tail[1..];
                }
            }
        }
    }
    out.push_str(rest);
    out
}

/// Decodes the entity at the start of `s` (which begins with `&`), returning
/// the character and the byte length consumed.
fn decode_entity(s: &str) -> Option<(char, usize)> {
    // Longest entity we accept is `&#x10FFFF;`.
    let semi = s.bytes().take(11).position(|b| b == b';')?;
    let body = &s[1..semi];
    let ch = match body.to_ascii_lowercase().as_str() {
        "amp" => '&',
        "lt" => '<',
        "gt" => '>',
        "quot" => '"',
        _ => {
            let num = body.strip_prefix('#')?;
            let code = match num.strip_prefix(['x', 'X']) {
                Some(hex) if !hex.is_empty() && hex.bytes().all(|b| b.is_ascii_hexdigit()) => {
                    u32::from_str_radix(hex, 16).ok()?
                }
                Some(_) => return None,
                None if !num.is_empty() && num.bytes().all(|b| b.is_ascii_digit()) => {
                    num.parse().ok()?
                }
                None => return None,
            };
            char::from_u32(code)?
        }
    };
    Some((ch, semi + 1))
}
