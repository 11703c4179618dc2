"""Minor-gcd profiles of the Seifert family V_k.

The third entry of the profile of ``build_Vk(empty, k)`` is |4 + 2k|, so
two members are told apart exactly when those values differ.
"""
from spatialsurf.seifert import (IntMatrix, build_Vk, congruent_transform, format_matrix,
                                 gcd_profile, profiles_distinguish, random_unimodular)

empty = IntMatrix([])
print(format_matrix(build_Vk(empty, 0)))
for k in range(-4, 3):
    print('k={0:+d} profile={1}'.format(k, gcd_profile(build_Vk(empty, k))))

print('V_0 vs V_1 distinguished:', profiles_distinguish(build_Vk(empty, 0), build_Vk(empty, 1)))
print('V_0 vs V_-4 distinguished:', profiles_distinguish(build_Vk(empty, 0), build_Vk(empty, -4)))

# A change of basis P^T V P never moves the profile.
v = build_Vk(IntMatrix([[1, 2], [1, 3]]), 2)
p = random_unimodular(v.n, 20, seed=1)
print('profile before', gcd_profile(v), 'after', gcd_profile(congruent_transform(v, p)))
