//! Mechanical verification that spherical twists on the derived category of a
//! cycle of projective lines satisfy the relations of the (centrally extended)
//! pure mapping class group of the punctured torus.
//!
//! * [`words`]: words in the Humphrey generators and every relator family.
//! * [`ktheory`]: exact integer matrices on `Z^{n+1}`.
//! * [`sheaf`]: the closed object calculus, cohomology oracle and twist rules.
//! * [`verifier`]: proof search, trace checking and verification suites.
//! * [`cli`]: the command line front end.

pub mod cli;
pub mod exact;
pub mod ktheory;
pub mod sheaf;
pub mod verifier;
pub mod words;
