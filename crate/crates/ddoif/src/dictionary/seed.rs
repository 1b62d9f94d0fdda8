//! The built-in seed dictionary.
//!
//! A deliberately small starter vocabulary: the six first-level classes plus
//! the worked clothing example (Dress with its two subclasses, and Skirt).
//! The full published dictionary runs to over a thousand classes and is
//! distributed separately; tools that need it load it with
//! [`parse_dictionary`](super::parse_dictionary). The same tree ships as
//! data files in YAML, JSON, and XML under `data/`.

use super::{ClassNode, Dictionary};

/// Edition tag of the built-in dictionary.
pub const SEED_VERSION: &str = "seed-0.1";

/// Build the seed dictionary. Conforms to the naming convention by
/// construction: `lint_names(&seed_dictionary())` is empty.
pub fn seed_dictionary() -> Dictionary {
    Dictionary::new(SEED_VERSION).with_roots(vec![
        ClassNode::new("clothing")
            .with_description("Garments and apparel categories.")
            .with_children(vec![
                ClassNode::new("Dress")
                    .with_description("One-piece garments combining bodice and skirt.")
                    .with_children(vec![
                        ClassNode::new("A-line Dress"),
                        ClassNode::new("Apron Dress"),
                    ]),
                ClassNode::new("Skirt"),
            ]),
        ClassNode::new("material")
            .with_description("Raw materials an item is made from."),
        ClassNode::new("fabric")
            .with_description("Woven, knitted, and non-woven textile types."),
        ClassNode::new("post-processing")
            .with_description("Finishing treatments applied after production."),
        ClassNode::new("footwear")
            .with_description("Shoes, boots, and other foot coverings."),
        ClassNode::new("anatomy")
            .with_description("Body regions an item relates to."),
    ])
}

#[cfg(test)]
mod tests {
    use super::super::{lint_names, ClassPath};
    use super::*;

    #[test]
    fn documented_paths_resolve() {
        let seed = seed_dictionary();
        for path in [
            "clothing",
            "clothing/Dress",
            "clothing/Dress/A-line Dress",
            "clothing/Dress/Apron Dress",
            "clothing/Skirt",
        ] {
            let parsed = ClassPath::parse(path).unwrap();
            assert!(seed.resolve(&parsed).is_ok(), "{path} should resolve");
        }
    }

    #[test]
    fn six_lowercase_roots() {
        let seed = seed_dictionary();
        let names: Vec<&str> = seed.roots.iter().map(|r| r.name.as_str()).collect();
        assert_eq!(
            names,
            vec!["clothing", "material", "fabric", "post-processing", "footwear", "anatomy"]
        );
    }

    #[test]
    fn includes_footwear_and_anatomy() {
        let seed = seed_dictionary();
        assert!(seed.root("footwear").is_some());
        assert!(seed.root("anatomy").is_some());
    }

    #[test]
    fn media_format_names_are_not_classes() {
        let seed = seed_dictionary();
        for tag in ["JPEG", "PNG", "OBJ", "MPEG-4", "jpeg", "png"] {
            assert!(
                seed.resolve(&ClassPath::parse(tag).unwrap()).is_err(),
                "{tag} must not be a dictionary class"
            );
        }
    }

    #[test]
    fn conforms_to_naming_convention() {
        assert!(lint_names(&seed_dictionary()).is_empty());
    }

    #[test]
    fn node_count_is_stable() {
        // 6 roots + Dress + Skirt + A-line Dress + Apron Dress.
        assert_eq!(seed_dictionary().node_count(), 10);
    }
}
