"""A quick tour of the board geometry: vertices, faces, symmetries.

Run:  python demos/01_geometry_tour.py
"""
from cubeslide import (FaceSpec, Vertex, all_symmetries, face_vertices,
                       faces_through, parallel_face)

# Vertices are bit strings x1x2...xd; "001" is the cube corner with x3 = 1.
v = Vertex.from_string("001")
print(f"vertex {v.to_string()} has integer coords {v.coords}")

# A face is a star vector: stars mark the free axes.
print("\n2-faces through 000:")
for f in faces_through(Vertex(3, 0), 2):
    verts = ", ".join(w.to_string() for w in face_vertices(f))
    print(f"  {f.to_string()}  -> vertices {verts}")

f = FaceSpec.from_string("**0")
print(f"\nthe face parallel to {f.to_string()} is {parallel_face(f).to_string()}")

# The cube's symmetry group: axis permutations times reflections.
for d in (2, 3, 4):
    n = sum(1 for _ in all_symmetries(d))
    print(f"Q^{d} has {n} symmetries (2^{d} * {d}!)")
