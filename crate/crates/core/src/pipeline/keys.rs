use std::collections::HashMap;
use std::sync::OnceLock;

use regex::Regex;

use crate::error::{Error, Result};

/// Spelling variants (already in normalized form) and the canonical key each
/// one maps to. Canonical keys are themselves normalized and never appear as
/// variants, which keeps normalization idempotent.
pub const COUNTRY_ALIASES: &[(&str, &str)] = &[
    ("viet nam", "vietnam"),
    ("korea south", "south korea"),
    ("republic of korea", "south korea"),
    ("korea republic of", "south korea"),
    ("korea rep", "south korea"),
    ("korea north", "north korea"),
    ("democratic peoples republic of korea", "north korea"),
    ("korea democratic peoples republic of", "north korea"),
    ("korea dem peoples rep", "north korea"),
    ("russian federation", "russia"),
    ("iran islamic republic of", "iran"),
    ("iran islamic rep", "iran"),
    ("united states of america", "united states"),
    ("usa", "united states"),
    ("us", "united states"),
    (
        "united kingdom of great britain and northern ireland",
        "united kingdom",
    ),
    ("uk", "united kingdom"),
    ("czech republic", "czechia"),
    ("syrian arab republic", "syria"),
    ("lao peoples democratic republic", "laos"),
    ("lao pdr", "laos"),
    ("côte divoire", "cote divoire"),
    ("ivory coast", "cote divoire"),
    ("cabo verde", "cape verde"),
    ("swaziland", "eswatini"),
    ("burma", "myanmar"),
    ("east timor", "timor leste"),
    (
        "democratic republic of the congo",
        "democratic republic of congo",
    ),
    (
        "congo democratic republic of the",
        "democratic republic of congo",
    ),
    ("congo dem rep", "democratic republic of congo"),
    ("drc", "democratic republic of congo"),
    ("republic of the congo", "congo"),
    ("congo rep", "congo"),
    ("congo brazzaville", "congo"),
    ("united republic of tanzania", "tanzania"),
    ("tanzania united republic of", "tanzania"),
    ("republic of moldova", "moldova"),
    ("moldova republic of", "moldova"),
    ("macedonia", "north macedonia"),
    (
        "the former yugoslav republic of macedonia",
        "north macedonia",
    ),
    ("brunei darussalam", "brunei"),
    ("gambia the", "gambia"),
    ("the gambia", "gambia"),
    ("bahamas the", "bahamas"),
    ("the bahamas", "bahamas"),
    ("kyrgyz republic", "kyrgyzstan"),
    ("slovak republic", "slovakia"),
    ("micronesia federated states of", "micronesia"),
    ("taiwan province of china", "taiwan"),
    ("holy see", "vatican"),
    ("state of palestine", "palestine"),
    ("palestine state of", "palestine"),
    ("venezuela bolivarian republic of", "venezuela"),
    ("bolivia plurinational state of", "bolivia"),
    ("turkiye", "turkey"),
    ("egypt arab rep", "egypt"),
    ("yemen rep", "yemen"),
];

fn alias_map() -> &'static HashMap<&'static str, &'static str> {
    static MAP: OnceLock<HashMap<&'static str, &'static str>> = OnceLock::new();
    MAP.get_or_init(|| COUNTRY_ALIASES.iter().copied().collect())
}

fn bracketed() -> &'static Regex {
    static RE: OnceLock<Regex> = OnceLock::new();
    RE.get_or_init(|| Regex::new(r"\([^)]*\)|\[[^\]]*\]").unwrap())
}

fn apostrophes() -> &'static Regex {
    static RE: OnceLock<Regex> = OnceLock::new();
    RE.get_or_init(|| Regex::new(r"['’`´]").unwrap())
}

fn punctuation() -> &'static Regex {
    static RE: OnceLock<Regex> = OnceLock::new();
    RE.get_or_init(|| Regex::new(r"[^\p{L}\p{N}\s]+").unwrap())
}

fn whitespace() -> &'static Regex {
    static RE: OnceLock<Regex> = OnceLock::new();
    RE.get_or_init(|| Regex::new(r"\s+").unwrap())
}

/// Canonical join key for a country name: lowercased, parenthesized
/// qualifiers and punctuation removed, whitespace collapsed, then mapped
/// through [`COUNTRY_ALIASES`].
pub fn normalize_country_key(name: &str) -> Result<String> {
    let lower = name.to_lowercase();
    let s = bracketed().replace_all(&lower, " ");
    let s = apostrophes().replace_all(&s, "");
    let s = punctuation().replace_all(&s, " ");
    let s = whitespace().replace_all(s.trim(), " ").into_owned();
    if s.is_empty() {
        return Err(Error::EmptyKey {
            raw: name.to_owned(),
        });
    }
    Ok(alias_map().get(s.as_str()).map_or(s, |c| (*c).to_owned()))
}
