# Gluing Module Variables
# 粘合模块使用的常量

# p 取该值时表示普通粘合（每个节点 alpha = 0），对应 CLI 的 --p 0
PLAIN_GLUING = 0

# 证书 JSON 中的字段顺序（与 GluingCertificate.to_dict 保持一致）
CERTIFICATE_FIELDS = ("part1", "part2", "w", "alpha", "p", "rep1", "rep2")
